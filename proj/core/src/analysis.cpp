#include "femtosim/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "femtosim/channel.hpp"
#include "femtosim/units.hpp"

namespace femtosim {

void AnalysisParams::validate() const {
    if (!std::isfinite(threshold_sir_db))
        throw std::invalid_argument("analysis.threshold_sir_db must be finite");
    if (pathloss_exponent < 2.0 || pathloss_exponent > 6.0)
        throw std::invalid_argument(
            "analysis.pathloss_exponent must be in [2, 6]");
    if (!std::isfinite(interference_margin_db))
        throw std::invalid_argument(
            "analysis.interference_margin_db must be finite");
    if (!(sigma_total_db > 0.0))
        throw std::invalid_argument("analysis.sigma_total_db must be > 0");
    if (!(reference_distance_m > 0.0))
        throw std::invalid_argument(
            "analysis.reference_distance_m must be > 0");
    if (cell_radius_m < reference_distance_m)
        throw std::invalid_argument(
            "analysis.cell_radius_m must be >= analysis.reference_distance_m");
}

void CapacityParams::validate() const {
    if (sectors_q < 1)
        throw std::invalid_argument("capacity.sectors_q must be >= 1");
    if (!(processing_gain > 0.0))
        throw std::invalid_argument("capacity.processing_gain must be > 0");
    if (!(reuse_efficiency > 0.0) || reuse_efficiency > 1.0)
        throw std::invalid_argument(
            "capacity.reuse_efficiency must be in (0, 1]");
    if (!std::isfinite(pce_cd_db) || pce_cd_db < 0.0)
        throw std::invalid_argument("capacity.pce_cd_db must be >= 0");
    if (!(source_activity > 0.0) || source_activity > 1.0)
        throw std::invalid_argument(
            "capacity.source_activity must be in (0, 1]");
    if (!std::isfinite(ebio_db))
        throw std::invalid_argument("capacity.ebio_db must be finite");
    if (!std::isfinite(snr_db))
        throw std::invalid_argument("capacity.snr_db must be finite");
}

namespace {

// Shared kernel; callers guarantee ratio >= 1 or clamp beforehand.
double outage_unchecked(double ratio, const AnalysisParams& p) {
    const double arg = (p.threshold_sir_db +
                        10.0 * p.pathloss_exponent * std::log10(ratio) +
                        p.interference_margin_db) /
                       p.sigma_total_db;
    return 1.0 - q_function(arg);
}

} // namespace

double outage_at(double distance_ratio, const AnalysisParams& params) {
    params.validate();
    if (!(distance_ratio >= 1.0))
        throw std::domain_error("outage_at: distance_ratio must be >= 1");
    return outage_unchecked(distance_ratio, params);
}

double cell_averaged_outage(const AnalysisParams& params) {
    params.validate();
    const double r_cell = params.cell_radius_m;
    const double d_ref = params.reference_distance_m;
    // Disc mass inside the reference distance carries the clamped value.
    const double inner_frac = (d_ref / r_cell) * (d_ref / r_cell);
    const double inner = outage_unchecked(1.0, params) * inner_frac;
    if (d_ref == r_cell)
        return inner;
    const auto integrand = [&](double r) {
        return outage_unchecked(r / d_ref, params) * 2.0 * r /
               (r_cell * r_cell);
    };
    const double outer =
        detail::adaptive_simpson(integrand, d_ref, r_cell, 1e-8, 10000);
    return inner + outer;
}

OutageProfilePoint outage_profile_literal(double a,
                                          const AnalysisParams& params) {
    params.validate();
    if (!(a >= 1.0))
        throw std::domain_error("outage_profile_literal: a must be >= 1");
    const double sigma2 = params.sigma_total_db * params.sigma_total_db;
    const double braces =
        kTwoPi * std::exp((-params.threshold_sir_db -
                           10.0 * params.pathloss_exponent * std::log10(a) +
                           (sigma2 / 2.0) * (sigma2 / 2.0) / 2.0) /
                          sigma2) -
        std::sqrt(kTwoPi);
    OutageProfilePoint point;
    point.interior = (std::exp(-a * a / 2.0) - std::exp(-0.5)) * braces;
    point.boundary = (std::exp(-a * a * kPi * kPi) - kPi / 6.0) * braces;
    return point;
}

double worst_case_sir_formula(double reuse_ratio_q) {
    if (!(reuse_ratio_q > 1.0))
        throw std::domain_error("worst_case_sir_formula: Q must be > 1");
    const double q = reuse_ratio_q;
    const double denom = 2.0 * std::pow(q - 1.0, -4.0) +
                         2.0 * std::pow(q + 1.0, -4.0) +
                         2.0 * std::pow(q, -4.0);
    return 1.0 / denom;
}

double sir_from_distances(double cell_radius_m,
                          std::span<const double> interferer_distances_m,
                          double pathloss_exponent) {
    if (!(cell_radius_m > 0.0))
        throw std::domain_error("sir_from_distances: cell radius must be > 0");
    if (interferer_distances_m.empty())
        throw std::domain_error(
            "sir_from_distances: interferer list must be nonempty");
    double denom = 0.0;
    for (double d : interferer_distances_m) {
        if (!(d > 0.0))
            throw std::domain_error(
                "sir_from_distances: all distances must be > 0");
        denom += std::pow(d, -pathloss_exponent);
    }
    return std::pow(cell_radius_m, -pathloss_exponent) / denom;
}

double capacity_imperfect(const CapacityParams& params) {
    params.validate();
    const double degradation = db_to_linear(-params.pce_cd_db);
    const double ebio = db_to_linear(params.ebio_db);
    const double noise_over_signal = db_to_linear(-params.snr_db);
    const double braces =
        static_cast<double>(params.sectors_q) * params.processing_gain / ebio -
        noise_over_signal;
    const double n = 1.0 + degradation * params.reuse_efficiency * braces /
                               params.source_activity;
    return n < 1.0 ? 1.0 : n;
}

double capacity_perfect(const CapacityParams& params) {
    params.validate();
    const double ebio = db_to_linear(params.ebio_db);
    const double noise_over_signal = db_to_linear(-params.snr_db);
    const double n = 1.0 + params.reuse_efficiency *
                               (params.processing_gain / ebio -
                                noise_over_signal);
    return n < 1.0 ? 1.0 : n;
}

namespace detail {

namespace {

struct SimpsonBudget {
    int intervals_left;
};

double simpson(double a, double fa, double b, double fb, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a,
                     double fa, double b, double fb, double m, double fm,
                     double whole, double tol, SimpsonBudget& budget) {
    if (budget.intervals_left <= 0)
        throw std::runtime_error(
            "adaptive_simpson: interval budget exhausted before reaching "
            "tolerance");
    budget.intervals_left -= 1;
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(a, fa, m, fm, flm);
    const double right = simpson(m, fm, b, fb, frm);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, tol / 2.0, budget) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, tol / 2.0, budget);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol_abs, int max_intervals) {
    if (!(b > a))
        throw std::invalid_argument("adaptive_simpson: requires b > a");
    if (!(tol_abs > 0.0))
        throw std::invalid_argument("adaptive_simpson: tolerance must be > 0");
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = simpson(a, fa, b, fb, fm);
    SimpsonBudget budget{max_intervals};
    return adaptive_step(f, a, fa, b, fb, m, fm, whole, tol_abs, budget);
}

} // namespace detail

} // namespace femtosim
