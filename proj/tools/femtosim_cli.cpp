// femtosim: two-tier cellular outage, capacity, and spectrum toolkit.
//
// Exit codes: 0 success, 2 configuration or usage error, 3 runtime error.

#include <cinttypes>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "femtosim/runner.hpp"
#include "femtosim/scenario.hpp"
#include "femtosim/version.hpp"

namespace {

struct CliState {
    std::string config_path;
    std::vector<std::string> overrides;
    std::uint64_t seed = 0;
    bool seed_set = false;
    long long trials = 0;
    bool trials_set = false;
    femtosim::RunOptions run;
};

void add_common_options(CLI::App* cmd, CliState& st) {
    cmd->add_option("--config", st.config_path,
                    "Scenario JSON file (defaults apply when omitted)");
    cmd->add_option("--set", st.overrides,
                    "Override a config value, key.path=value (repeatable)");
    cmd->add_option("--seed", st.seed, "Master seed (engine.master_seed)")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--trials", st.trials, "Trial count (engine.trials)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", st.run.out_dir, "Output directory")
        ->capture_default_str();
    cmd->add_option("--format", st.run.format, "Primary data file format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

int run_subcommand(const std::string& name, CliState& st) {
    std::vector<std::string> overrides = st.overrides;
    if (st.seed_set)
        overrides.push_back("engine.master_seed=" + std::to_string(st.seed));
    if (st.trials_set)
        overrides.push_back("engine.trials=" + std::to_string(st.trials));

    femtosim::Scenario scenario =
        st.config_path.empty()
            ? femtosim::scenario_from_json_text("", overrides)
            : femtosim::load_scenario(st.config_path, overrides);

    const femtosim::RunManifest manifest =
        femtosim::run(name, scenario, st.run, st.config_path);

    std::printf("%s: seed=%" PRIu64 " config=%s\n",
                manifest.subcommand.c_str(), manifest.master_seed,
                manifest.config_hash.c_str());
    for (const std::string& f : manifest.outputs)
        std::printf("  wrote %s/%s\n", st.run.out_dir.c_str(), f.c_str());
    std::printf("  wrote %s/manifest.json (%.1f ms)\n",
                st.run.out_dir.c_str(), manifest.wall_ms);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-tier femto/macro network simulator and analysis tool"};
    app.set_version_flag("--version", std::string(femtosim::kVersion));
    app.require_subcommand(1);

    CliState st;
    const std::vector<std::string> names = {
        "analyze-outage",  "analyze-capacity", "worst-case-sir", "simulate",
        "sweep",           "traffic",          "density"};
    const std::vector<std::string> blurbs = {
        "Closed-form outage curves and the cell-averaged outage",
        "Reverse-link capacity curves vs power-control error and activity",
        "Worst-case co-channel S/I table for the configured cluster size",
        "Monte Carlo outage estimates for both tiers",
        "Outage sweep over one axis (femto_count, macro_interferers, "
        "sector_mode, cpc_on_off)",
        "One traffic snapshot with the resulting spectrum allocation",
        "Max supportable macro users vs femto density"};
    for (std::size_t i = 0; i < names.size(); ++i) {
        CLI::App* cmd = app.add_subcommand(names[i], blurbs[i]);
        add_common_options(cmd, st);
        if (names[i] == "sweep") {
            cmd->add_option("--axis", st.run.sweep_axis,
                            "Sweep axis: femto_count, macro_interferers, "
                            "sector_mode, cpc_on_off")
                ->capture_default_str();
            cmd->add_option("--values", st.run.values,
                            "Axis values (defaults per axis when omitted)");
        }
        if (names[i] == "density")
            cmd->add_option("--values", st.run.values,
                            "Femto activity densities in [0, 1]");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    CLI::App* cmd = app.get_subcommands().front();
    st.seed_set = cmd->count("--seed") > 0;
    st.trials_set = cmd->count("--trials") > 0;

    try {
        return run_subcommand(cmd->get_name(), st);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
