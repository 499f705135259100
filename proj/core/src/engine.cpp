#include "femtosim/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <stdexcept>
#include <utility>

#include "femtosim/random.hpp"
#include "femtosim/units.hpp"

namespace femtosim {

namespace {

constexpr std::uint64_t kTagMacroBase = 0x6d61637262617365ULL;
constexpr std::uint64_t kTagMacroOut = 0x6d6163726f757458ULL;
constexpr std::uint64_t kTagMacroFemto = 0x6d616372666d746fULL;
constexpr std::uint64_t kTagFemtoBase = 0x666d746f62617365ULL;
constexpr std::uint64_t kTagFemtoOut = 0x666d746f6f757458ULL;
constexpr std::uint64_t kTagFemtoPeer = 0x666d746f70656572ULL;

// Entity indices are packed as trial * kMaxEntities + entity, so every
// entity keeps its stream when counts change.
constexpr std::uint64_t kMaxEntities = 4096;

struct TrialResult {
    bool outage = false;
    double cross_ratio = 0.0;
};

// Immutable per-estimate state shared across trials.
struct EngineContext {
    const Scenario& sc;
    NetworkLayout layout;
    std::vector<double> femto_tx_mw; // downlink budget per femto site
    double gamma_macro_lin = 0.0;
    double gamma_femto_lin = 0.0;
    double sigma_db = 0.0;
    double d_ref = 0.0;

    explicit EngineContext(const Scenario& scenario)
        : sc(scenario),
          layout(build_layout(scenario.layout, scenario.engine.master_seed)) {
        gamma_macro_lin = db_to_linear(scenario.engine.gamma_macro_db);
        gamma_femto_lin = db_to_linear(scenario.engine.gamma_femto_db);
        sigma_db = scenario.channel.shadow_sigma_db;
        d_ref = scenario.channel.reference_distance;
        const double edge =
            std::max(scenario.layout.femto_radius_m, d_ref);
        femto_tx_mw.reserve(layout.femto_sites.size());
        for (const Point2D& site : layout.femto_sites) {
            LinkBudgetInputs inputs;
            inputs.p_macro_dbm = scenario.engine.macro_tx_dbm;
            inputs.loss_macro_db = path_loss_db(
                std::max(distance(site, layout.macro_center), d_ref),
                scenario.channel);
            inputs.loss_femto_db = path_loss_db(edge, scenario.channel);
            femto_tx_mw.push_back(
                dbm_to_mw(femto_downlink_power(inputs, scenario.power)));
        }
    }

    double gain_linear(double dist_m, double shadow_db) const {
        const double d = std::max(dist_m, d_ref);
        return db_to_linear(-path_loss_db(d, sc.channel) + shadow_db);
    }

    // Steady state of the bang-bang rule when the step-up ceiling is the
    // source's own budget: sources near the protected user shed power,
    // everyone else keeps the baseline.
    double cpc_power_mw(double baseline_mw, double dist_m) const {
        if (dist_m < sc.power.cpc_threshold_m)
            return std::max(baseline_mw -
                                static_cast<double>(sc.engine.cpc_iterations) *
                                    sc.power.cpc_step_down_mw,
                            0.0);
        return baseline_mw;
    }

    // Aggregate femto-tier interference at `user`, skipping `skip_index`
    // (the serving site, or -1 for none).
    double femto_tier_sum(std::uint64_t tag, std::uint64_t trial,
                          const Point2D& user, int skip_index) const {
        double sum = 0.0;
        const int n = static_cast<int>(layout.femto_sites.size());
        for (int j = 0; j < n; ++j) {
            if (j == skip_index)
                continue;
            Rng s = make_stream(sc.engine.master_seed, tag,
                                trial * kMaxEntities +
                                    static_cast<std::uint64_t>(j));
            const bool active = uniform01(s) < sc.engine.femto_activity;
            if (!active)
                continue;
            const double shadow = shadowing_sample(s, sigma_db);
            const Point2D& site = layout.femto_sites[
                static_cast<std::size_t>(j)];
            double p_mw = femto_tx_mw[static_cast<std::size_t>(j)];
            if (sc.engine.cpc_enabled)
                p_mw = cpc_power_mw(p_mw, distance(site, user));
            sum += p_mw * gain_linear(distance(site, user), shadow);
        }
        return sum;
    }

    // Out-of-cell interferer total relative to the serving power: one
    // stream per interferer, Normal(mean, sd) floored at zero.
    double out_of_cell_rel_sum(std::uint64_t tag, std::uint64_t trial,
                               int count, double mean, double sd) const {
        double sum = 0.0;
        for (int i = 0; i < count; ++i) {
            Rng s = make_stream(sc.engine.master_seed, tag,
                                trial * kMaxEntities +
                                    static_cast<std::uint64_t>(i));
            const double g = mean + sd * standard_normal(s);
            if (g > 0.0)
                sum += g;
        }
        return sum;
    }

    TrialResult macro_trial(std::uint64_t trial) const {
        const EngineParams& e = sc.engine;
        Rng base = make_stream(e.master_seed, kTagMacroBase, trial);
        const Point2D user =
            uniform_in_disc(base, layout.macro_center, layout.macro_radius_m);
        const double shadow = shadowing_sample(base, sigma_db);
        const int n_in = poisson(base, e.macro_in_cell_mean);

        const double p_sig =
            dbm_to_mw(e.macro_tx_dbm) *
            gain_linear(distance(user, layout.macro_center), shadow);
        const double i_in = n_in * e.macro_in_cell_coupling * p_sig;
        const double i_out =
            out_of_cell_rel_sum(kTagMacroOut, trial, e.n_macro_interferers,
                                e.macro_out_rel_mean, e.macro_out_rel_sd) *
            p_sig;
        const double cross =
            femto_tier_sum(kTagMacroFemto, trial, user, -1) /
            interference_reduction_factor(sc.femto_sectors);

        const double denom = i_in + i_out + cross;
        const double num = e.processing_gain * e.received_power_factor * p_sig;
        TrialResult r;
        r.outage = denom > 0.0 && num <= gamma_macro_lin * denom;
        r.cross_ratio = p_sig > 0.0 ? cross / p_sig : 0.0;
        return r;
    }

    TrialResult femto_trial(std::uint64_t trial) const {
        const EngineParams& e = sc.engine;
        const int n_femto = static_cast<int>(layout.femto_sites.size());
        Rng base = make_stream(e.master_seed, kTagFemtoBase, trial);
        const int serving = std::min(
            static_cast<int>(uniform01(base) * n_femto), n_femto - 1);
        const Point2D& site =
            layout.femto_sites[static_cast<std::size_t>(serving)];
        const Point2D user =
            uniform_in_disc(base, site, layout.femto_radius_m);
        const double shadow = shadowing_sample(base, sigma_db);
        const int n_in =
            std::min(poisson(base, e.femto_in_cell_mean),
                     TrafficState::kMaxUsersPerBs);

        const double p_sig = std::min(
            femto_tx_mw[static_cast<std::size_t>(serving)] *
                gain_linear(distance(user, site), shadow),
            e.rx_target_femto_mw);
        const double i_in = n_in * e.femto_in_cell_coupling * p_sig;
        const double i_out =
            out_of_cell_rel_sum(kTagFemtoOut, trial, e.n_macro_interferers,
                                e.femto_out_rel_mean, e.femto_out_rel_sd) *
            p_sig / interference_reduction_factor(sc.macro_sectors);
        const double peers =
            femto_tier_sum(kTagFemtoPeer, trial, user, serving) /
            interference_reduction_factor(sc.femto_sectors);

        const double cross = i_out + peers;
        const double denom = i_in + cross;
        const double num = e.processing_gain * e.received_power_factor * p_sig;
        TrialResult r;
        r.outage = denom > 0.0 && num <= gamma_femto_lin * denom;
        r.cross_ratio = p_sig > 0.0 ? cross / p_sig : 0.0;
        return r;
    }
};

// Fixed chunk boundaries and index-ordered reduction keep the result
// independent of scheduling.
template <typename TrialFn>
OutageEstimate run_trials(const Scenario& sc, TrialFn&& fn) {
    constexpr int kChunks = 16;
    const long trials = sc.engine.trials;
    std::array<long, kChunks> counts{};
    std::array<double, kChunks> cross{};
    {
        std::array<std::future<void>, kChunks> futures;
        for (int c = 0; c < kChunks; ++c) {
            futures[static_cast<std::size_t>(c)] = std::async(
                std::launch::async, [&, c] {
                    const long lo = trials * c / kChunks;
                    const long hi = trials * (c + 1) / kChunks;
                    long n = 0;
                    double s = 0.0;
                    for (long t = lo; t < hi; ++t) {
                        const TrialResult r =
                            fn(static_cast<std::uint64_t>(t));
                        n += r.outage ? 1 : 0;
                        s += r.cross_ratio;
                    }
                    counts[static_cast<std::size_t>(c)] = n;
                    cross[static_cast<std::size_t>(c)] = s;
                });
        }
        for (auto& f : futures)
            f.get();
    }
    long outage_count = 0;
    double cross_sum = 0.0;
    for (int c = 0; c < kChunks; ++c) {
        outage_count += counts[static_cast<std::size_t>(c)];
        cross_sum += cross[static_cast<std::size_t>(c)];
    }
    OutageEstimate est;
    est.trials = trials;
    est.master_seed = sc.engine.master_seed;
    est.fingerprint = sc.fingerprint;
    est.p_hat = static_cast<double>(outage_count) /
                static_cast<double>(trials);
    est.std_error =
        std::sqrt(est.p_hat * (1.0 - est.p_hat) /
                  static_cast<double>(trials));
    est.mean_cross_tier_ratio = cross_sum / static_cast<double>(trials);
    return est;
}

} // namespace

void EngineParams::validate() const {
    if (!std::isfinite(gamma_macro_db) || !std::isfinite(gamma_femto_db))
        throw std::invalid_argument("engine.gamma thresholds must be finite");
    if (phi_macro < 0.0 || phi_macro > 1.0 || phi_femto < 0.0 ||
        phi_femto > 1.0)
        throw std::invalid_argument("engine.phi targets must be in [0, 1]");
    if (!(processing_gain > 0.0))
        throw std::invalid_argument("engine.processing_gain must be > 0");
    if (!(received_power_factor > 0.0))
        throw std::invalid_argument(
            "engine.received_power_factor must be > 0");
    if (!std::isfinite(macro_tx_dbm))
        throw std::invalid_argument("engine.macro_tx_dbm must be finite");
    if (!(rx_target_femto_mw > 0.0))
        throw std::invalid_argument("engine.rx_target_femto_mw must be > 0");
    if (n_macro_interferers < 0 ||
        n_macro_interferers > static_cast<int>(kMaxEntities))
        throw std::invalid_argument(
            "engine.n_macro_interferers must be in [0, 4096]");
    if (macro_in_cell_mean < 0.0 || femto_in_cell_mean < 0.0)
        throw std::invalid_argument("engine.in_cell means must be >= 0");
    if (macro_in_cell_coupling < 0.0 || femto_in_cell_coupling < 0.0)
        throw std::invalid_argument("engine.in_cell couplings must be >= 0");
    if (!std::isfinite(macro_out_rel_mean) ||
        !std::isfinite(femto_out_rel_mean))
        throw std::invalid_argument("engine.out_rel means must be finite");
    if (macro_out_rel_sd < 0.0 || femto_out_rel_sd < 0.0)
        throw std::invalid_argument("engine.out_rel sds must be >= 0");
    if (femto_activity < 0.0 || femto_activity > 1.0)
        throw std::invalid_argument("engine.femto_activity must be in [0, 1]");
    if (cpc_iterations < 1)
        throw std::invalid_argument("engine.cpc_iterations must be >= 1");
    if (!(stability_alpha > 0.0))
        throw std::invalid_argument("engine.stability_alpha must be > 0");
    if (max_macro_users < 0 ||
        max_macro_users > static_cast<int>(kMaxEntities))
        throw std::invalid_argument(
            "engine.max_macro_users must be in [0, 4096]");
    if (trials < 1)
        throw std::invalid_argument("engine.trials must be >= 1");
}

void TrafficParams::validate() const {
    if (lambda < 0.0)
        throw std::invalid_argument("traffic.lambda must be >= 0");
    if (macro_load_mean < 0.0 || macro_load_mean > 1.0)
        throw std::invalid_argument("traffic.macro_load_mean must be in [0, 1]");
    if (macro_load_sd < 0.0)
        throw std::invalid_argument("traffic.macro_load_sd must be >= 0");
}

Scenario::Scenario() { femto_capacity.pce_cd_db = 2.0; }

void Scenario::validate() const {
    layout.validate();
    if (layout.n_femto > static_cast<int>(kMaxEntities))
        throw std::invalid_argument("layout.n_femto must be <= 4096");
    channel.validate();
    macro_sectors.validate();
    femto_sectors.validate();
    power.validate();
    spectrum.validate();
    macro_capacity.validate();
    femto_capacity.validate();
    analysis.validate();
    engine.validate();
    traffic.validate();
}

OutageEstimate estimate_macro_outage(const Scenario& scenario) {
    scenario.validate();
    EngineContext ctx(scenario);
    return run_trials(scenario,
                      [&](std::uint64_t t) { return ctx.macro_trial(t); });
}

OutageEstimate estimate_femto_outage(const Scenario& scenario) {
    scenario.validate();
    if (scenario.layout.n_femto < 1)
        throw std::invalid_argument(
            "engine: femto outage requires layout.n_femto >= 1");
    EngineContext ctx(scenario);
    return run_trials(scenario,
                      [&](std::uint64_t t) { return ctx.femto_trial(t); });
}

SweepAxis parse_sweep_axis(const std::string& name) {
    if (name == "femto_count")
        return SweepAxis::femto_count;
    if (name == "macro_interferers")
        return SweepAxis::macro_interferers;
    if (name == "sector_mode")
        return SweepAxis::sector_mode;
    if (name == "cpc_on_off")
        return SweepAxis::cpc_on_off;
    throw std::invalid_argument("sweep: unknown axis '" + name + "'");
}

std::string sweep_axis_name(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::femto_count:
        return "femto_count";
    case SweepAxis::macro_interferers:
        return "macro_interferers";
    case SweepAxis::sector_mode:
        return "sector_mode";
    case SweepAxis::cpc_on_off:
        return "cpc_on_off";
    }
    throw std::logic_error("sweep: unhandled axis");
}

namespace {

std::string sector_label(int n) {
    if (n == 1)
        return "omni";
    if (n == 3)
        return "120deg";
    if (n == 4)
        return "90deg";
    return std::to_string(n) + "sector";
}

Scenario with_axis_value(const Scenario& base, SweepAxis axis, double value,
                         std::string& label) {
    Scenario s = base;
    switch (axis) {
    case SweepAxis::femto_count: {
        const int n = static_cast<int>(value);
        if (n < 0 || static_cast<double>(n) != value)
            throw std::invalid_argument(
                "sweep: femto_count values must be nonnegative integers");
        s.layout.n_femto = n;
        label = std::to_string(n);
        break;
    }
    case SweepAxis::macro_interferers: {
        const int n = static_cast<int>(value);
        if (n < 0 || static_cast<double>(n) != value)
            throw std::invalid_argument(
                "sweep: macro_interferers values must be nonnegative "
                "integers");
        s.engine.n_macro_interferers = n;
        label = std::to_string(n);
        break;
    }
    case SweepAxis::sector_mode: {
        const int n = static_cast<int>(value);
        if (n < 1 || static_cast<double>(n) != value)
            throw std::invalid_argument(
                "sweep: sector_mode values must be positive sector counts");
        s.macro_sectors.n_sectors = n;
        s.femto_sectors.n_sectors = n;
        label = sector_label(n);
        break;
    }
    case SweepAxis::cpc_on_off:
        s.engine.cpc_enabled = value != 0.0;
        label = s.engine.cpc_enabled ? "on" : "off";
        break;
    }
    return s;
}

} // namespace

SimReport sweep(const Scenario& scenario, SweepAxis axis,
                std::span<const double> values) {
    scenario.validate();
    if (values.empty())
        throw std::invalid_argument("sweep: value list must be nonempty");
    SimReport report;
    report.kind = "sweep:" + sweep_axis_name(axis);
    report.master_seed = scenario.engine.master_seed;
    report.fingerprint = scenario.fingerprint;
    for (double v : values) {
        std::string label;
        const Scenario s = with_axis_value(scenario, axis, v, label);
        SweepPoint macro_point;
        macro_point.axis = sweep_axis_name(axis);
        macro_point.value = v;
        macro_point.label = label;
        macro_point.tier = "macro";
        macro_point.estimate = estimate_macro_outage(s);
        report.sweep_points.push_back(std::move(macro_point));
        if (s.layout.n_femto >= 1) {
            SweepPoint femto_point;
            femto_point.axis = sweep_axis_name(axis);
            femto_point.value = v;
            femto_point.label = label;
            femto_point.tier = "femto";
            femto_point.estimate = estimate_femto_outage(s);
            report.sweep_points.push_back(std::move(femto_point));
        }
    }
    return report;
}

SimReport capacity_comparison(const Scenario& scenario) {
    scenario.validate();
    SimReport report;
    report.kind = "capacity";
    report.master_seed = scenario.engine.master_seed;
    report.fingerprint = scenario.fingerprint;
    const std::pair<const char*, const CapacityParams*> tiers[] = {
        {"macro", &scenario.macro_capacity},
        {"femto", &scenario.femto_capacity},
    };
    for (const auto& [tier, params] : tiers) {
        for (int ebio = 1; ebio <= 10; ++ebio) {
            CapacityParams p = *params;
            p.ebio_db = static_cast<double>(ebio);
            CapacityPoint point;
            point.tier = tier;
            point.ebio_db = p.ebio_db;
            point.perfect_channels = capacity_perfect(p);
            point.imperfect_channels = capacity_imperfect(p);
            report.capacity_points.push_back(std::move(point));
        }
    }
    return report;
}

SimReport density_tradeoff(const Scenario& scenario,
                           std::span<const double> femto_density_values) {
    scenario.validate();
    if (femto_density_values.empty())
        throw std::invalid_argument(
            "density_tradeoff: value list must be nonempty");
    if (scenario.layout.n_femto < 1)
        throw std::invalid_argument(
            "density_tradeoff: requires layout.n_femto >= 1");
    SimReport report;
    report.kind = "density";
    report.master_seed = scenario.engine.master_seed;
    report.fingerprint = scenario.fingerprint;
    for (double density : femto_density_values) {
        if (density < 0.0 || density > 1.0)
            throw std::invalid_argument(
                "density_tradeoff: densities must be in [0, 1]");
        const auto admissible = [&](int macro_users) {
            Scenario s = scenario;
            s.engine.femto_activity = density;
            s.engine.n_macro_interferers = macro_users;
            if (estimate_macro_outage(s).p_hat > s.engine.phi_macro)
                return false;
            return estimate_femto_outage(s).p_hat <= s.engine.phi_femto;
        };
        if (!admissible(0))
            throw std::runtime_error(
                "density_tradeoff: outage ceiling violated with zero macro "
                "users at femto density " +
                std::to_string(density));
        int lo = 0;
        int hi = scenario.engine.max_macro_users;
        if (admissible(hi)) {
            lo = hi;
        } else {
            // Invariant: lo admissible, hi not; tolerance is one user.
            while (hi - lo > 1) {
                const int mid = lo + (hi - lo) / 2;
                if (admissible(mid))
                    lo = mid;
                else
                    hi = mid;
            }
        }
        DensityPoint point;
        point.femto_density = density;
        point.max_macro_users = lo;
        report.density_points.push_back(point);
    }
    return report;
}

} // namespace femtosim
