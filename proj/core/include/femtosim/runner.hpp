#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "femtosim/engine.hpp"

// Subcommand orchestration shared by the CLI binary and the tests. Each run
// writes plot-ready data files plus a manifest.json into the output
// directory. Data files are byte-identical for identical (config, seed);
// the manifest additionally records wall-clock time and is the only file
// allowed to differ between reruns.

namespace femtosim {

struct RunOptions {
    std::string out_dir = ".";
    std::string format = "csv"; // "csv" or "json" for the primary data file
    std::string sweep_axis = "sector_mode";
    std::vector<double> values; // sweep/density values; empty = defaults
};

struct RunManifest {
    std::string subcommand;
    std::string scenario_path; // empty when defaults were used
    std::string config_hash;   // 16 hex digits
    std::uint64_t master_seed = 0;
    std::string tool_version;
    std::vector<std::string> outputs; // file names inside out_dir
    double wall_ms = 0.0;
    std::string resolved_config_json; // canonical scenario echo
};

/// Subcommands: analyze-outage, analyze-capacity, worst-case-sir, simulate,
/// sweep, traffic, density. Throws std::invalid_argument for unknown names
/// or bad options, std::runtime_error for IO and solver failures.
RunManifest run(const std::string& subcommand, const Scenario& scenario,
                const RunOptions& options,
                const std::string& scenario_path = "");

std::string manifest_json(const RunManifest& manifest);

} // namespace femtosim
