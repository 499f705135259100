#pragma once

#include <span>
#include <vector>

#include "femtosim/random.hpp"

// Spectrum partitioning between the macro tier and the femto tier out of a
// common pool, plus per-BS traffic generation and utilization.

namespace femtosim {

struct SpectrumPlan {
    double total_khz = 1000.0;
    double macro_share_khz = 500.0;
    double femto_aggregate_khz = 500.0;
    double hotspot_threshold = 0.8; // load fraction that triggers borrowing
    std::vector<double> per_femto_khz; // per-BS allocation, sums to aggregate
    std::vector<double> borrowing_khz; // per-BS delta vs the even baseline

    void validate() const;

    /// Even split of the aggregate across n BSs, empty borrowing ledger.
    static SpectrumPlan baseline(double total_khz, double macro_share_khz,
                                 int n_femto);
};

struct TrafficState {
    static constexpr int kMaxUsersPerBs = 20;

    std::vector<int> femto_active; // per-BS active users, in [0, 20]
    double macro_load = 0.0;       // offered load fraction in [0, 1]
    double lambda = 0.0;           // arrival mean used to generate the state

    void validate() const;
};

/// Per-BS active user counts drawn Poisson(lambda), capped at 20.
TrafficState generate_femto_traffic(Rng& rng, double lambda, int n_bs);

/// Macro offered load drawn Normal(mean, stddev), clipped to [0, 1].
double generate_macro_load(Rng& rng, double mean, double stddev);

/// Per-BS utilization, active / 20.
std::vector<double> utilization(const TrafficState& state);

/// Load-balanced reallocation. A macro tier loaded above the hotspot
/// threshold borrows the idle fraction of cool femto shares, scaled by how
/// far past the threshold it sits; otherwise femto BSs loaded above the
/// threshold borrow from the idle macro share, pro-rated when it cannot
/// cover them. The output always sums to total_khz and never cuts a femto
/// BS below the bandwidth its active users occupy.
SpectrumPlan allocate_spectrum(double macro_load,
                               std::span<const double> femto_utilizations,
                               const SpectrumPlan& plan);

} // namespace femtosim
