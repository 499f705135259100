#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "femtosim/analysis.hpp"
#include "femtosim/antenna.hpp"
#include "femtosim/channel.hpp"
#include "femtosim/geometry.hpp"
#include "femtosim/power.hpp"
#include "femtosim/spectrum.hpp"

// Monte Carlo outage estimation for both tiers, parameter sweeps, capacity
// comparison, and the admission/density tradeoff.
//
// Determinism contract: every trial draws from streams derived only from
// (master_seed, purpose tag, trial or trial*entity index), and reduction is
// a fixed-order sum over fixed chunk boundaries. Results are therefore
// byte-identical for a given scenario regardless of thread scheduling, and
// per-entity streams make the count axes (femto count, macro interferers,
// activity) monotone trial-by-trial, not just in expectation.

namespace femtosim {

struct EngineParams {
    double gamma_macro_db = 12.0; // macro tier SIR target
    double gamma_femto_db = 14.0; // femto tier SIR target
    double phi_macro = 0.35;      // outage ceilings for admission search
    double phi_femto = 0.5;
    double processing_gain = 256.0;
    double received_power_factor = 1.0; // scales the despread signal term
    double macro_tx_dbm = 43.0;
    double rx_target_femto_mw = 150.0; // cap on the femto signal numerator
    int n_macro_interferers = 14;
    // In-cell co-user model: Poisson count, each contributing a fixed
    // fraction of the serving received power.
    double macro_in_cell_mean = 4.0;
    double macro_in_cell_coupling = 0.3;
    double femto_in_cell_mean = 4.0;
    double femto_in_cell_coupling = 0.3;
    // Out-of-cell interferer strength relative to the serving received
    // power, drawn Normal(mean, sd) per interferer and floored at 0.
    double macro_out_rel_mean = 1.0;
    double macro_out_rel_sd = 0.5;
    double femto_out_rel_mean = 0.3;
    double femto_out_rel_sd = 0.15;
    double femto_activity = 1.0; // per-femto transmit probability
    bool cpc_enabled = false;
    int cpc_iterations = 5;
    double stability_alpha = 0.25; // carried as scenario metadata
    int max_macro_users = 50;      // admission search upper bracket
    long trials = 20000;
    std::uint64_t master_seed = 1;

    void validate() const;
};

struct TrafficParams {
    double lambda = 12.0; // femto arrival mean per BS
    double macro_load_mean = 0.5;
    double macro_load_sd = 0.2;

    void validate() const;
};

struct Scenario {
    LayoutConfig layout;
    ChannelParams channel;
    SectorConfig macro_sectors;
    SectorConfig femto_sectors;
    PowerPolicy power;
    SpectrumPlan spectrum;
    CapacityParams macro_capacity;
    CapacityParams femto_capacity;
    AnalysisParams analysis;
    EngineParams engine;
    TrafficParams traffic;
    std::uint64_t fingerprint = 0; // set by the loader, echoed into results

    Scenario();
    void validate() const;
};

struct OutageEstimate {
    double p_hat = 0.0;
    double std_error = 0.0; // sqrt(p_hat * (1 - p_hat) / trials)
    long trials = 0;
    std::uint64_t master_seed = 0;
    std::uint64_t fingerprint = 0;
    // Cross-tier denominator term over serving power, averaged across
    // trials; halves exactly when the relevant sector count doubles.
    double mean_cross_tier_ratio = 0.0;
};

struct SweepPoint {
    std::string axis;
    double value = 0.0;
    std::string label;
    std::string tier; // "macro" or "femto"
    OutageEstimate estimate;
};

struct CapacityPoint {
    std::string tier;
    double ebio_db = 0.0;
    double perfect_channels = 0.0;
    double imperfect_channels = 0.0;
};

struct DensityPoint {
    double femto_density = 0.0; // transmit probability in [0, 1]
    int max_macro_users = 0;
};

struct SimReport {
    std::string kind;
    std::uint64_t master_seed = 0;
    std::uint64_t fingerprint = 0;
    std::vector<OutageEstimate> estimates; // simulate: [macro, femto]
    std::vector<SweepPoint> sweep_points;
    std::vector<CapacityPoint> capacity_points;
    std::vector<DensityPoint> density_points;
};

/// Outage frequency of a macro user against in-cell, out-of-cell and
/// cross-tier femto interference; the cross-tier term is divided by the
/// femto sector count.
OutageEstimate estimate_macro_outage(const Scenario& scenario);

/// Outage frequency of a femto user against its own cell load, interfering
/// macro transmissions (divided by the macro sector count) and neighbor
/// femto BSs (divided by the femto sector count).
OutageEstimate estimate_femto_outage(const Scenario& scenario);

enum class SweepAxis { femto_count, macro_interferers, sector_mode, cpc_on_off };

SweepAxis parse_sweep_axis(const std::string& name); // throws on unknown
std::string sweep_axis_name(SweepAxis axis);

/// One macro and one femto estimate per axis value, everything else held at
/// the scenario settings.
SimReport sweep(const Scenario& scenario, SweepAxis axis,
                std::span<const double> values);

/// Perfect vs imperfect power control channel counts per tier over a
/// 1..10 dB bit-energy-to-interference sweep.
SimReport capacity_comparison(const Scenario& scenario);

/// For each femto transmit density, the largest macro interferer count that
/// keeps both tiers at or under their outage ceilings (integer bisection).
/// Throws if even zero macro users violates a ceiling.
SimReport density_tradeoff(const Scenario& scenario,
                           std::span<const double> femto_density_values);

} // namespace femtosim
