#pragma once

#include <functional>
#include <span>

// Closed-form evaluations: outage probability versus normalized distance,
// cell-averaged outage by quadrature, worst-case co-channel S/I, and
// DS-CDMA capacity under perfect/imperfect power control.

namespace femtosim {

struct AnalysisParams {
    double threshold_sir_db = 18.0;      // target S/I the link must clear
    double pathloss_exponent = 4.0;      // in [2, 6]
    double interference_margin_db = 0.0; // extra margin added to the threshold
    double sigma_total_db = 4.0;         // combined lognormal spread, > 0
    double cell_radius_m = 1000.0;
    double reference_distance_m = 1.0; // close-in reference, <= cell radius

    void validate() const;
};

struct CapacityParams {
    int sectors_q = 3;              // cell sectors, usually 3 for DS-CDMA
    double processing_gain = 256.0; // dimensionless spreading factor
    double reuse_efficiency = 0.65; // n_f in (0, 1]
    double pce_cd_db = 1.0;         // power-control-error degradation
    double source_activity = 0.05;  // S_f in (0, 1]
    double ebio_db = 7.0;           // target bit energy to interference ratio
    double snr_db = 26.0;           // signal to background noise ratio

    void validate() const;
};

/// Outage probability at normalized distance ratio >= 1 (distance over the
/// close-in reference). Monotone nondecreasing in the ratio and, for
/// ratio > 1, in the pathloss exponent; tends to 1 as the ratio grows.
double outage_at(double distance_ratio, const AnalysisParams& params);

/// Outage averaged over a user position uniform in the cell disc (radial
/// density 2r/R^2). Inside the reference distance the ratio is clamped to 1,
/// so the result always lies between outage_at(1) and outage_at(R/d_ref).
/// Quadrature is adaptive Simpson at 1e-8 absolute tolerance; failure to
/// converge within the interval budget throws, it is never truncated.
double cell_averaged_outage(const AnalysisParams& params);

/// Literal evaluation of an alternative closed-form outage profile kept only
/// for side-by-side curve comparison; the simulation path never consumes it.
/// The nested-exponential variant of the inner term overflows for realistic
/// sigma, so the affine exponent reading is evaluated. `interior` is the
/// general-position expression, `boundary` the cell-boundary variant.
struct OutageProfilePoint {
    double interior = 0.0;
    double boundary = 0.0;
};
OutageProfilePoint outage_profile_literal(double a,
                                          const AnalysisParams& params);

/// Worst-case co-channel S/I (linear) for a mobile at the cell edge of a
/// hexagonal layout with reuse ratio Q > 1:
/// 1 / (2(Q-1)^-4 + 2(Q+1)^-4 + 2 Q^-4).
double worst_case_sir_formula(double reuse_ratio_q);

/// Exact S/I (linear) for a desired link at the cell radius against
/// interferers at the given distances: R^-n / sum(D_i^-n).
double sir_from_distances(double cell_radius_m,
                          std::span<const double> interferer_distances_m,
                          double pathloss_exponent);

/// DS-CDMA channel count under imperfect power control:
/// 1 + (10^(-Cd/10) * n_f) * {Q*Gp/ebio_lin - (Pn/S)_lin} / S_f,
/// floored at one channel. Strictly decreasing in Cd, S_f, and ebio while
/// the braces stay positive.
double capacity_imperfect(const CapacityParams& params);

/// DS-CDMA channel count under perfect power control:
/// 1 + n_f * {Gp/ebio_lin - (Pn/S)_lin}, floored at one channel.
double capacity_perfect(const CapacityParams& params);

namespace detail {

/// Adaptive Simpson on [a, b] to the absolute tolerance; throws
/// std::runtime_error once the subdivision budget is exhausted.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol_abs, int max_intervals);

} // namespace detail

} // namespace femtosim
