#include "femtosim/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace femtosim {

void SpectrumPlan::validate() const {
    if (!(total_khz > 0.0))
        throw std::invalid_argument("spectrum.total_khz must be > 0");
    if (macro_share_khz < 0.0)
        throw std::invalid_argument("spectrum.macro_share_khz must be >= 0");
    if (femto_aggregate_khz < 0.0)
        throw std::invalid_argument(
            "spectrum.femto_aggregate_khz must be >= 0");
    if (!(hotspot_threshold > 0.0) || !(hotspot_threshold < 1.0))
        throw std::invalid_argument(
            "spectrum.hotspot_threshold must be in (0, 1)");
    if (std::abs(macro_share_khz + femto_aggregate_khz - total_khz) >
        1e-9 * total_khz)
        throw std::invalid_argument(
            "spectrum: macro_share_khz + femto_aggregate_khz must equal "
            "total_khz");
    for (double v : per_femto_khz)
        if (v < 0.0)
            throw std::invalid_argument(
                "spectrum.per_femto_khz entries must be >= 0");
    if (!borrowing_khz.empty() &&
        borrowing_khz.size() != per_femto_khz.size())
        throw std::invalid_argument(
            "spectrum.borrowing_khz must match per_femto_khz in length");
}

SpectrumPlan SpectrumPlan::baseline(double total_khz, double macro_share_khz,
                                    int n_femto) {
    if (n_femto < 1)
        throw std::invalid_argument("spectrum: n_femto must be >= 1");
    SpectrumPlan plan;
    plan.total_khz = total_khz;
    plan.macro_share_khz = macro_share_khz;
    plan.femto_aggregate_khz = total_khz - macro_share_khz;
    plan.per_femto_khz.assign(
        static_cast<std::size_t>(n_femto),
        plan.femto_aggregate_khz / static_cast<double>(n_femto));
    plan.borrowing_khz.assign(static_cast<std::size_t>(n_femto), 0.0);
    plan.validate();
    return plan;
}

void TrafficState::validate() const {
    for (int a : femto_active)
        if (a < 0 || a > kMaxUsersPerBs)
            throw std::invalid_argument(
                "traffic.femto_active entries must be in [0, 20]");
    if (macro_load < 0.0 || macro_load > 1.0)
        throw std::invalid_argument("traffic.macro_load must be in [0, 1]");
    if (lambda < 0.0)
        throw std::invalid_argument("traffic.lambda must be >= 0");
}

TrafficState generate_femto_traffic(Rng& rng, double lambda, int n_bs) {
    if (lambda < 0.0)
        throw std::invalid_argument("traffic.lambda must be >= 0");
    if (n_bs < 0)
        throw std::invalid_argument("traffic: n_bs must be >= 0");
    TrafficState state;
    state.lambda = lambda;
    state.femto_active.reserve(static_cast<std::size_t>(n_bs));
    for (int i = 0; i < n_bs; ++i) {
        const int raw = poisson(rng, lambda);
        state.femto_active.push_back(
            std::min(raw, TrafficState::kMaxUsersPerBs));
    }
    return state;
}

double generate_macro_load(Rng& rng, double mean, double stddev) {
    if (stddev < 0.0)
        throw std::invalid_argument("traffic: stddev must be >= 0");
    const double raw = mean + stddev * standard_normal(rng);
    return std::clamp(raw, 0.0, 1.0);
}

std::vector<double> utilization(const TrafficState& state) {
    state.validate();
    std::vector<double> out;
    out.reserve(state.femto_active.size());
    for (int a : state.femto_active)
        out.push_back(static_cast<double>(a) /
                      static_cast<double>(TrafficState::kMaxUsersPerBs));
    return out;
}

SpectrumPlan allocate_spectrum(double macro_load,
                               std::span<const double> femto_utilizations,
                               const SpectrumPlan& plan) {
    plan.validate();
    if (macro_load < 0.0 || macro_load > 1.0)
        throw std::invalid_argument("spectrum: macro_load must be in [0, 1]");
    for (double u : femto_utilizations)
        if (u < 0.0 || u > 1.0)
            throw std::invalid_argument(
                "spectrum: femto utilizations must be in [0, 1]");
    const int n = static_cast<int>(femto_utilizations.size());
    if (n == 0) {
        SpectrumPlan out = plan;
        out.macro_share_khz = plan.total_khz;
        out.femto_aggregate_khz = 0.0;
        out.per_femto_khz.clear();
        out.borrowing_khz.clear();
        return out;
    }

    const double base_share =
        plan.femto_aggregate_khz / static_cast<double>(n);
    const double threshold = plan.hotspot_threshold;
    std::vector<double> shares(static_cast<std::size_t>(n), base_share);
    std::vector<double> deltas(static_cast<std::size_t>(n), 0.0);

    if (macro_load > threshold) {
        // Hot macro tier: pull the idle fraction of cool femto shares,
        // scaled by how deep into the hotspot band the macro load sits.
        const double pull =
            std::min((macro_load - threshold) / (1.0 - threshold), 1.0);
        for (int i = 0; i < n; ++i) {
            const double u = femto_utilizations[static_cast<std::size_t>(i)];
            if (u > threshold)
                continue;
            const double lend = pull * (1.0 - u) * base_share;
            shares[static_cast<std::size_t>(i)] -= lend;
            deltas[static_cast<std::size_t>(i)] -= lend;
        }
    } else {
        // Cool macro tier: hot femto BSs borrow from the idle macro share,
        // pro-rated when requests exceed it.
        const double macro_idle = (1.0 - macro_load) * plan.macro_share_khz;
        std::vector<double> want(static_cast<std::size_t>(n), 0.0);
        double want_total = 0.0;
        for (int i = 0; i < n; ++i) {
            const double u = femto_utilizations[static_cast<std::size_t>(i)];
            if (u > threshold) {
                want[static_cast<std::size_t>(i)] =
                    (u - threshold) / (1.0 - threshold) * base_share;
                want_total += want[static_cast<std::size_t>(i)];
            }
        }
        if (want_total > 0.0) {
            const double scale =
                want_total <= macro_idle ? 1.0 : macro_idle / want_total;
            for (int i = 0; i < n; ++i) {
                const double grant =
                    scale * want[static_cast<std::size_t>(i)];
                shares[static_cast<std::size_t>(i)] += grant;
                deltas[static_cast<std::size_t>(i)] += grant;
            }
        }
    }

    SpectrumPlan out;
    out.total_khz = plan.total_khz;
    out.hotspot_threshold = plan.hotspot_threshold;
    out.per_femto_khz = std::move(shares);
    out.borrowing_khz = std::move(deltas);
    out.femto_aggregate_khz = std::accumulate(out.per_femto_khz.begin(),
                                              out.per_femto_khz.end(), 0.0);
    // The macro share is the exact complement, so the plan always sums to
    // total_khz.
    out.macro_share_khz = out.total_khz - out.femto_aggregate_khz;
    return out;
}

} // namespace femtosim
