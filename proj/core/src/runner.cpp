#include "femtosim/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "femtosim/random.hpp"
#include "femtosim/report.hpp"
#include "femtosim/scenario.hpp"
#include "femtosim/version.hpp"

namespace femtosim {

namespace {

using nlohmann::json;

constexpr std::uint64_t kTagTrafficFemto = 0x7472616666696331ULL;
constexpr std::uint64_t kTagTrafficMacro = 0x7472616666696332ULL;

void write_file(const std::filesystem::path& dir, const std::string& name,
                const std::string& content, RunManifest& manifest) {
    const std::filesystem::path path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("run: cannot write '" + path.string() + "'");
    out << content;
    if (!out)
        throw std::runtime_error("run: short write to '" + path.string() +
                                 "'");
    manifest.outputs.push_back(name);
}

json points_to_json(const std::vector<CurvePoint>& pts) {
    json arr = json::array();
    for (const CurvePoint& p : pts)
        arr.push_back({{"x", p.x}, {"y", p.y}});
    return arr;
}

// 50 log-spaced distance ratios across [1, cell_radius / reference].
std::vector<double> ratio_grid(const AnalysisParams& params) {
    const double top = params.cell_radius_m / params.reference_distance_m;
    std::vector<double> xs;
    if (top <= 1.0) {
        xs.push_back(1.0);
        return xs;
    }
    const int n = 50;
    const double span = std::log10(top);
    xs.reserve(n);
    for (int i = 0; i < n; ++i)
        xs.push_back(std::pow(10.0, span * i / (n - 1)));
    return xs;
}

void run_analyze_outage(const Scenario& sc, const RunOptions& opt,
                        const std::filesystem::path& dir,
                        RunManifest& manifest) {
    const AnalysisParams& p = sc.analysis;
    const std::vector<double> ratios = ratio_grid(p);
    std::vector<CurvePoint> curve;
    curve.reserve(ratios.size());
    for (double r : ratios)
        curve.push_back({r, outage_at(r, p)});

    std::vector<CurvePoint> interior;
    std::vector<CurvePoint> boundary;
    for (int i = 0; i < 50; ++i) {
        const double a = 1.0 + 4.0 * i / 49.0;
        const OutageProfilePoint v = outage_profile_literal(a, p);
        interior.push_back({a, v.interior});
        boundary.push_back({a, v.boundary});
    }
    const double average = cell_averaged_outage(p);
    const std::vector<CurvePoint> avg = {
        {p.cell_radius_m / p.reference_distance_m, average}};

    if (opt.format == "json") {
        json j;
        j["outage_curve"] = points_to_json(curve);
        j["profile_interior"] = points_to_json(interior);
        j["profile_boundary"] = points_to_json(boundary);
        j["cell_average"] = average;
        write_file(dir, "analysis_outage.json", j.dump(2) + "\n", manifest);
        return;
    }
    write_file(dir, "outage_curve.csv",
               curve_csv("distance_ratio", "outage", curve), manifest);
    write_file(dir, "outage_profile_interior.csv",
               curve_csv("distance_ratio", "profile_value", interior),
               manifest);
    write_file(dir, "outage_profile_boundary.csv",
               curve_csv("distance_ratio", "profile_value", boundary),
               manifest);
    write_file(dir, "outage_cell_average.csv",
               curve_csv("cell_radius_over_reference", "average_outage", avg),
               manifest);
}

void run_analyze_capacity(const Scenario& sc, const RunOptions& opt,
                          const std::filesystem::path& dir,
                          RunManifest& manifest) {
    std::vector<CurvePoint> vs_cd;
    for (int i = 0; i <= 6; ++i) {
        CapacityParams p = sc.macro_capacity;
        p.pce_cd_db = 0.5 * i;
        vs_cd.push_back({p.pce_cd_db, capacity_imperfect(p)});
    }
    std::vector<CurvePoint> vs_sf;
    for (int i = 1; i <= 5; ++i) {
        CapacityParams p = sc.macro_capacity;
        p.pce_cd_db = 1.0;
        p.source_activity = 0.01 * i;
        vs_sf.push_back({p.source_activity, capacity_imperfect(p)});
    }
    std::vector<CurvePoint> vs_ebio;
    for (int ebio = 1; ebio <= 10; ++ebio) {
        CapacityParams p = sc.macro_capacity;
        p.ebio_db = ebio;
        vs_ebio.push_back({p.ebio_db, capacity_perfect(p)});
    }

    if (opt.format == "json") {
        json j;
        j["capacity_vs_cd"] = points_to_json(vs_cd);
        j["capacity_vs_sf"] = points_to_json(vs_sf);
        j["capacity_vs_ebio_perfect"] = points_to_json(vs_ebio);
        write_file(dir, "analysis_capacity.json", j.dump(2) + "\n",
                   manifest);
        return;
    }
    write_file(dir, "capacity_vs_cd.csv",
               curve_csv("pce_cd_db", "channels", vs_cd), manifest);
    write_file(dir, "capacity_vs_sf.csv",
               curve_csv("source_activity", "channels", vs_sf), manifest);
    write_file(dir, "capacity_vs_ebio_perfect.csv",
               curve_csv("ebio_db", "channels", vs_ebio), manifest);
}

void run_worst_case_sir(const Scenario& sc, const RunOptions& opt,
                        const std::filesystem::path& dir,
                        RunManifest& manifest) {
    const double q_exact = reuse_ratio(sc.layout.cluster_size);
    // Edge distances are conventionally tabulated from the one-decimal
    // reuse ratio.
    const double q = std::round(q_exact * 10.0) / 10.0;
    const double formula = worst_case_sir_formula(q);
    const std::vector<double> distances = {
        (q - 1.0) * sc.layout.macro_radius_m,
        (q - 1.0) * sc.layout.macro_radius_m,
        (q - 0.5) * sc.layout.macro_radius_m,
        q * sc.layout.macro_radius_m,
        (q + 0.5) * sc.layout.macro_radius_m,
        (q + 1.0) * sc.layout.macro_radius_m,
    };
    const double edge = sir_from_distances(sc.layout.macro_radius_m,
                                           distances,
                                           sc.channel.pathloss_exponent);
    const std::pair<const char*, double> rows[] = {
        {"reuse_ratio_exact", q_exact},
        {"reuse_ratio_rounded", q},
        {"formula_sir_linear", formula},
        {"formula_sir_db", linear_to_db(formula)},
        {"edge_set_sir_linear", edge},
        {"edge_set_sir_db", linear_to_db(edge)},
    };

    if (opt.format == "json") {
        json j = json::array();
        for (const auto& [name, value] : rows)
            j.push_back({{"quantity", name}, {"value", value}});
        write_file(dir, "worst_case_sir.json",
                   json{{"rows", std::move(j)}}.dump(2) + "\n", manifest);
        return;
    }
    std::string csv = "quantity,value\n";
    for (const auto& [name, value] : rows)
        csv += std::string(name) + "," + format_g15(value) + "\n";
    write_file(dir, "worst_case_sir.csv", csv, manifest);
}

void run_simulate(const Scenario& sc, const RunOptions& opt,
                  const std::filesystem::path& dir, RunManifest& manifest) {
    SimReport report;
    report.kind = "simulate";
    report.master_seed = sc.engine.master_seed;
    report.fingerprint = sc.fingerprint;
    report.estimates.push_back(estimate_macro_outage(sc));
    if (sc.layout.n_femto >= 1)
        report.estimates.push_back(estimate_femto_outage(sc));
    if (opt.format == "json")
        write_file(dir, "report.json", report_json(report), manifest);
    else
        write_file(dir, "estimates.csv", estimates_csv(report), manifest);
    write_file(dir, "layout.json",
               layout_json(build_layout(sc.layout, sc.engine.master_seed)),
               manifest);
}

std::vector<double> default_sweep_values(SweepAxis axis) {
    switch (axis) {
    case SweepAxis::femto_count:
        return {1, 2, 4, 8, 12, 16, 20, 24};
    case SweepAxis::macro_interferers:
        return {5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
    case SweepAxis::sector_mode:
        return {1, 3, 4};
    case SweepAxis::cpc_on_off:
        return {0, 1};
    }
    throw std::logic_error("sweep: unhandled axis");
}

void run_sweep(const Scenario& sc, const RunOptions& opt,
               const std::filesystem::path& dir, RunManifest& manifest) {
    const SweepAxis axis = parse_sweep_axis(opt.sweep_axis);
    const std::vector<double> values =
        opt.values.empty() ? default_sweep_values(axis) : opt.values;
    const SimReport report = sweep(sc, axis, values);
    if (opt.format == "json")
        write_file(dir, "report.json", report_json(report), manifest);
    else
        write_file(dir, "sweep.csv", sweep_csv(report), manifest);
    write_file(dir, "layout.json",
               layout_json(build_layout(sc.layout, sc.engine.master_seed)),
               manifest);
}

void run_traffic(const Scenario& sc, const RunOptions& opt,
                 const std::filesystem::path& dir, RunManifest& manifest) {
    Rng femto_rng =
        make_stream(sc.engine.master_seed, kTagTrafficFemto, 0);
    TrafficState state = generate_femto_traffic(femto_rng, sc.traffic.lambda,
                                                sc.layout.n_femto);
    Rng macro_rng =
        make_stream(sc.engine.master_seed, kTagTrafficMacro, 0);
    state.macro_load = generate_macro_load(
        macro_rng, sc.traffic.macro_load_mean, sc.traffic.macro_load_sd);

    SpectrumPlan allocated = sc.spectrum;
    if (sc.layout.n_femto >= 1) {
        const std::vector<double> utils = utilization(state);
        allocated = allocate_spectrum(state.macro_load, utils, sc.spectrum);
    }
    if (opt.format == "json")
        write_file(dir, "traffic.json", traffic_json(state, allocated),
                   manifest);
    else
        write_file(dir, "traffic.csv", traffic_csv(state, allocated),
                   manifest);
}

void run_density(const Scenario& sc, const RunOptions& opt,
                 const std::filesystem::path& dir, RunManifest& manifest) {
    const std::vector<double> values =
        opt.values.empty() ? std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}
                           : opt.values;
    const SimReport report = density_tradeoff(sc, values);
    if (opt.format == "json")
        write_file(dir, "report.json", report_json(report), manifest);
    else
        write_file(dir, "density.csv", density_csv(report), manifest);
}

} // namespace

RunManifest run(const std::string& subcommand, const Scenario& scenario,
                const RunOptions& options,
                const std::string& scenario_path) {
    if (options.format != "csv" && options.format != "json")
        throw std::invalid_argument("run: format must be 'csv' or 'json'");
    scenario.validate();

    const auto started = std::chrono::steady_clock::now();
    RunManifest manifest;
    manifest.subcommand = subcommand;
    manifest.scenario_path = scenario_path;
    {
        char buf[17];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(scenario.fingerprint));
        manifest.config_hash = buf;
    }
    manifest.master_seed = scenario.engine.master_seed;
    manifest.tool_version = kVersion;
    manifest.resolved_config_json = scenario_to_json_text(scenario);

    std::filesystem::path dir(options.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw std::runtime_error("run: cannot create output dir '" +
                                 options.out_dir + "': " + ec.message());

    if (subcommand == "analyze-outage")
        run_analyze_outage(scenario, options, dir, manifest);
    else if (subcommand == "analyze-capacity")
        run_analyze_capacity(scenario, options, dir, manifest);
    else if (subcommand == "worst-case-sir")
        run_worst_case_sir(scenario, options, dir, manifest);
    else if (subcommand == "simulate")
        run_simulate(scenario, options, dir, manifest);
    else if (subcommand == "sweep")
        run_sweep(scenario, options, dir, manifest);
    else if (subcommand == "traffic")
        run_traffic(scenario, options, dir, manifest);
    else if (subcommand == "density")
        run_density(scenario, options, dir, manifest);
    else
        throw std::invalid_argument("run: unknown subcommand '" + subcommand +
                                    "'");

    manifest.wall_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - started)
            .count();
    write_file(dir, "manifest.json", manifest_json(manifest), manifest);
    manifest.outputs.pop_back(); // the manifest does not list itself
    return manifest;
}

std::string manifest_json(const RunManifest& manifest) {
    json j;
    j["subcommand"] = manifest.subcommand;
    j["scenario_path"] = manifest.scenario_path;
    j["config_hash"] = manifest.config_hash;
    j["master_seed"] = manifest.master_seed;
    j["tool_version"] = manifest.tool_version;
    j["outputs"] = manifest.outputs;
    j["wall_ms"] = manifest.wall_ms;
    j["resolved_config"] = json::parse(manifest.resolved_config_json);
    return j.dump(2) + "\n";
}

} // namespace femtosim
