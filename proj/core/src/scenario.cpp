#include "femtosim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace femtosim {

namespace {

using nlohmann::json;

json sectors_to_json(const SectorConfig& s) {
    json j;
    j["n_sectors"] = s.n_sectors;
    j["alignment_rad"] = s.alignment_rad;
    j["in_sector_gain_db"] = s.in_sector_gain_db;
    // JSON has no infinity; null stands for ideal rejection.
    if (std::isinf(s.out_of_sector_rejection_db))
        j["out_of_sector_rejection_db"] = nullptr;
    else
        j["out_of_sector_rejection_db"] = s.out_of_sector_rejection_db;
    return j;
}

json scenario_to_json(const Scenario& sc) {
    json j;
    j["layout"] = {
        {"n_femto", sc.layout.n_femto},
        {"macro_radius_m", sc.layout.macro_radius_m},
        {"femto_radius_m", sc.layout.femto_radius_m},
        {"min_site_separation_m", sc.layout.min_site_separation_m},
        {"cluster_size", sc.layout.cluster_size},
        {"max_placement_attempts", sc.layout.max_placement_attempts},
    };
    j["channel"] = {
        {"pathloss_exponent", sc.channel.pathloss_exponent},
        {"shadow_sigma_db", sc.channel.shadow_sigma_db},
        {"reference_distance", sc.channel.reference_distance},
    };
    j["macro_sectors"] = sectors_to_json(sc.macro_sectors);
    j["femto_sectors"] = sectors_to_json(sc.femto_sectors);
    j["power"] = {
        {"p_max_femto_dbm", sc.power.p_max_femto_dbm},
        {"p_ue_max_dbm", sc.power.p_ue_max_dbm},
        {"p_interference_max_dbm", sc.power.p_interference_max_dbm},
        {"cpc_threshold_m", sc.power.cpc_threshold_m},
        {"cpc_step_down_mw", sc.power.cpc_step_down_mw},
        {"cpc_step_up_mw", sc.power.cpc_step_up_mw},
    };
    j["spectrum"] = {
        {"total_khz", sc.spectrum.total_khz},
        {"macro_share_khz", sc.spectrum.macro_share_khz},
        {"femto_aggregate_khz", sc.spectrum.femto_aggregate_khz},
        {"hotspot_threshold", sc.spectrum.hotspot_threshold},
    };
    const auto capacity_to_json = [](const CapacityParams& c) {
        return json{
            {"sectors_q", c.sectors_q},
            {"processing_gain", c.processing_gain},
            {"reuse_efficiency", c.reuse_efficiency},
            {"pce_cd_db", c.pce_cd_db},
            {"source_activity", c.source_activity},
            {"ebio_db", c.ebio_db},
            {"snr_db", c.snr_db},
        };
    };
    j["macro_capacity"] = capacity_to_json(sc.macro_capacity);
    j["femto_capacity"] = capacity_to_json(sc.femto_capacity);
    j["analysis"] = {
        {"threshold_sir_db", sc.analysis.threshold_sir_db},
        {"pathloss_exponent", sc.analysis.pathloss_exponent},
        {"interference_margin_db", sc.analysis.interference_margin_db},
        {"sigma_total_db", sc.analysis.sigma_total_db},
        {"cell_radius_m", sc.analysis.cell_radius_m},
        {"reference_distance_m", sc.analysis.reference_distance_m},
    };
    j["engine"] = {
        {"gamma_macro_db", sc.engine.gamma_macro_db},
        {"gamma_femto_db", sc.engine.gamma_femto_db},
        {"phi_macro", sc.engine.phi_macro},
        {"phi_femto", sc.engine.phi_femto},
        {"processing_gain", sc.engine.processing_gain},
        {"received_power_factor", sc.engine.received_power_factor},
        {"macro_tx_dbm", sc.engine.macro_tx_dbm},
        {"rx_target_femto_mw", sc.engine.rx_target_femto_mw},
        {"n_macro_interferers", sc.engine.n_macro_interferers},
        {"macro_in_cell_mean", sc.engine.macro_in_cell_mean},
        {"macro_in_cell_coupling", sc.engine.macro_in_cell_coupling},
        {"femto_in_cell_mean", sc.engine.femto_in_cell_mean},
        {"femto_in_cell_coupling", sc.engine.femto_in_cell_coupling},
        {"macro_out_rel_mean", sc.engine.macro_out_rel_mean},
        {"macro_out_rel_sd", sc.engine.macro_out_rel_sd},
        {"femto_out_rel_mean", sc.engine.femto_out_rel_mean},
        {"femto_out_rel_sd", sc.engine.femto_out_rel_sd},
        {"femto_activity", sc.engine.femto_activity},
        {"cpc_enabled", sc.engine.cpc_enabled},
        {"cpc_iterations", sc.engine.cpc_iterations},
        {"stability_alpha", sc.engine.stability_alpha},
        {"max_macro_users", sc.engine.max_macro_users},
        {"trials", sc.engine.trials},
        {"master_seed", sc.engine.master_seed},
    };
    j["traffic"] = {
        {"lambda", sc.traffic.lambda},
        {"macro_load_mean", sc.traffic.macro_load_mean},
        {"macro_load_sd", sc.traffic.macro_load_sd},
    };
    return j;
}

// Strict field reader: every key must be known, every value the right type;
// consumed keys are tracked so leftovers can be reported by path.
class Reader {
public:
    Reader(const json& obj, std::string prefix)
        : obj_(obj), prefix_(std::move(prefix)) {
        if (!obj_.is_object())
            throw std::invalid_argument("config: '" + prefix_ +
                                        "' must be a JSON object");
    }

    template <typename T>
    void get(const char* key, T& out) {
        consumed_.insert(key);
        const auto it = obj_.find(key);
        if (it == obj_.end())
            return;
        try {
            out = it->template get<T>();
        } catch (const json::exception&) {
            throw std::invalid_argument("config: '" + prefix_ + "." + key +
                                        "' has the wrong type");
        }
    }

    // Rejection fields accept null for ideal (infinite) rejection.
    void get_rejection(const char* key, double& out) {
        consumed_.insert(key);
        const auto it = obj_.find(key);
        if (it == obj_.end())
            return;
        if (it->is_null()) {
            out = std::numeric_limits<double>::infinity();
            return;
        }
        try {
            out = it->get<double>();
        } catch (const json::exception&) {
            throw std::invalid_argument("config: '" + prefix_ + "." + key +
                                        "' must be a number or null");
        }
    }

    void finish() const {
        for (const auto& [key, value] : obj_.items()) {
            (void)value;
            if (!consumed_.count(key))
                throw std::invalid_argument("config: unknown key '" + prefix_ +
                                            "." + key + "'");
        }
    }

private:
    const json& obj_;
    std::string prefix_;
    std::set<std::string> consumed_;
};

void sectors_from_json(const json& j, const std::string& prefix,
                       SectorConfig& out) {
    Reader r(j, prefix);
    r.get("n_sectors", out.n_sectors);
    r.get("alignment_rad", out.alignment_rad);
    r.get("in_sector_gain_db", out.in_sector_gain_db);
    r.get_rejection("out_of_sector_rejection_db",
                    out.out_of_sector_rejection_db);
    r.finish();
}

void capacity_from_json(const json& j, const std::string& prefix,
                        CapacityParams& out) {
    Reader r(j, prefix);
    r.get("sectors_q", out.sectors_q);
    r.get("processing_gain", out.processing_gain);
    r.get("reuse_efficiency", out.reuse_efficiency);
    r.get("pce_cd_db", out.pce_cd_db);
    r.get("source_activity", out.source_activity);
    r.get("ebio_db", out.ebio_db);
    r.get("snr_db", out.snr_db);
    r.finish();
}

Scenario scenario_from_json(const json& root) {
    if (!root.is_object())
        throw std::invalid_argument("config: top level must be a JSON object");
    static const std::set<std::string> kGroups = {
        "layout",         "channel",        "macro_sectors",
        "femto_sectors",  "power",          "spectrum",
        "macro_capacity", "femto_capacity", "analysis",
        "engine",         "traffic",
    };
    for (const auto& [key, value] : root.items()) {
        (void)value;
        if (!kGroups.count(key))
            throw std::invalid_argument("config: unknown key '" + key + "'");
    }

    Scenario sc;
    if (root.contains("layout")) {
        Reader r(root.at("layout"), "layout");
        r.get("n_femto", sc.layout.n_femto);
        r.get("macro_radius_m", sc.layout.macro_radius_m);
        r.get("femto_radius_m", sc.layout.femto_radius_m);
        r.get("min_site_separation_m", sc.layout.min_site_separation_m);
        r.get("cluster_size", sc.layout.cluster_size);
        r.get("max_placement_attempts", sc.layout.max_placement_attempts);
        r.finish();
    }
    if (root.contains("channel")) {
        Reader r(root.at("channel"), "channel");
        r.get("pathloss_exponent", sc.channel.pathloss_exponent);
        r.get("shadow_sigma_db", sc.channel.shadow_sigma_db);
        r.get("reference_distance", sc.channel.reference_distance);
        r.finish();
    }
    if (root.contains("macro_sectors"))
        sectors_from_json(root.at("macro_sectors"), "macro_sectors",
                          sc.macro_sectors);
    if (root.contains("femto_sectors"))
        sectors_from_json(root.at("femto_sectors"), "femto_sectors",
                          sc.femto_sectors);
    if (root.contains("power")) {
        Reader r(root.at("power"), "power");
        r.get("p_max_femto_dbm", sc.power.p_max_femto_dbm);
        r.get("p_ue_max_dbm", sc.power.p_ue_max_dbm);
        r.get("p_interference_max_dbm", sc.power.p_interference_max_dbm);
        r.get("cpc_threshold_m", sc.power.cpc_threshold_m);
        r.get("cpc_step_down_mw", sc.power.cpc_step_down_mw);
        r.get("cpc_step_up_mw", sc.power.cpc_step_up_mw);
        r.finish();
    }
    if (root.contains("spectrum")) {
        Reader r(root.at("spectrum"), "spectrum");
        r.get("total_khz", sc.spectrum.total_khz);
        r.get("macro_share_khz", sc.spectrum.macro_share_khz);
        r.get("femto_aggregate_khz", sc.spectrum.femto_aggregate_khz);
        r.get("hotspot_threshold", sc.spectrum.hotspot_threshold);
        r.finish();
    }
    if (root.contains("macro_capacity"))
        capacity_from_json(root.at("macro_capacity"), "macro_capacity",
                           sc.macro_capacity);
    if (root.contains("femto_capacity"))
        capacity_from_json(root.at("femto_capacity"), "femto_capacity",
                           sc.femto_capacity);
    if (root.contains("analysis")) {
        Reader r(root.at("analysis"), "analysis");
        r.get("threshold_sir_db", sc.analysis.threshold_sir_db);
        r.get("pathloss_exponent", sc.analysis.pathloss_exponent);
        r.get("interference_margin_db", sc.analysis.interference_margin_db);
        r.get("sigma_total_db", sc.analysis.sigma_total_db);
        r.get("cell_radius_m", sc.analysis.cell_radius_m);
        r.get("reference_distance_m", sc.analysis.reference_distance_m);
        r.finish();
    }
    if (root.contains("engine")) {
        Reader r(root.at("engine"), "engine");
        r.get("gamma_macro_db", sc.engine.gamma_macro_db);
        r.get("gamma_femto_db", sc.engine.gamma_femto_db);
        r.get("phi_macro", sc.engine.phi_macro);
        r.get("phi_femto", sc.engine.phi_femto);
        r.get("processing_gain", sc.engine.processing_gain);
        r.get("received_power_factor", sc.engine.received_power_factor);
        r.get("macro_tx_dbm", sc.engine.macro_tx_dbm);
        r.get("rx_target_femto_mw", sc.engine.rx_target_femto_mw);
        r.get("n_macro_interferers", sc.engine.n_macro_interferers);
        r.get("macro_in_cell_mean", sc.engine.macro_in_cell_mean);
        r.get("macro_in_cell_coupling", sc.engine.macro_in_cell_coupling);
        r.get("femto_in_cell_mean", sc.engine.femto_in_cell_mean);
        r.get("femto_in_cell_coupling", sc.engine.femto_in_cell_coupling);
        r.get("macro_out_rel_mean", sc.engine.macro_out_rel_mean);
        r.get("macro_out_rel_sd", sc.engine.macro_out_rel_sd);
        r.get("femto_out_rel_mean", sc.engine.femto_out_rel_mean);
        r.get("femto_out_rel_sd", sc.engine.femto_out_rel_sd);
        r.get("femto_activity", sc.engine.femto_activity);
        r.get("cpc_enabled", sc.engine.cpc_enabled);
        r.get("cpc_iterations", sc.engine.cpc_iterations);
        r.get("stability_alpha", sc.engine.stability_alpha);
        r.get("max_macro_users", sc.engine.max_macro_users);
        r.get("trials", sc.engine.trials);
        r.get("master_seed", sc.engine.master_seed);
        r.finish();
    }
    if (root.contains("traffic")) {
        Reader r(root.at("traffic"), "traffic");
        r.get("lambda", sc.traffic.lambda);
        r.get("macro_load_mean", sc.traffic.macro_load_mean);
        r.get("macro_load_sd", sc.traffic.macro_load_sd);
        r.finish();
    }
    return sc;
}

// Overrides navigate the canonical JSON tree; a path that does not already
// exist is an unknown key.
// Bare leaf names (no dot) resolve when they are unique across all groups.
json* resolve_bare_key(json& root, const std::string& key) {
    json* found = nullptr;
    std::vector<std::string> hits;
    for (auto& [group, value] : root.items()) {
        if (!value.is_object())
            continue;
        if (value.contains(key)) {
            found = &value.at(key);
            hits.push_back(group + "." + key);
        }
    }
    if (hits.size() > 1) {
        std::string msg = "config: ambiguous key '" + key + "'; use one of";
        for (const std::string& h : hits)
            msg += " " + h;
        throw std::invalid_argument(msg);
    }
    return found;
}

void apply_override(json& root, const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument("config: override '" + spec +
                                    "' must look like key.path=value");
    const std::string path = spec.substr(0, eq);
    const std::string value_text = spec.substr(eq + 1);

    json parsed = json::parse(value_text, nullptr, false);
    if (parsed.is_discarded() || parsed.is_object() || parsed.is_array())
        parsed = json(value_text); // bare words become strings

    if (path.find('.') == std::string::npos && !root.contains(path)) {
        if (json* leaf = resolve_bare_key(root, path)) {
            *leaf = std::move(parsed);
            return;
        }
        throw std::invalid_argument("config: unknown key '" + path + "'");
    }

    json* node = &root;
    std::size_t start = 0;
    std::string walked;
    while (true) {
        const std::size_t dot = path.find('.', start);
        const std::string part = path.substr(
            start, dot == std::string::npos ? std::string::npos : dot - start);
        walked = walked.empty() ? part : walked + "." + part;
        if (part.empty() || !node->is_object() || !node->contains(part))
            throw std::invalid_argument("config: unknown key '" + walked +
                                        "'");
        node = &node->at(part);
        if (dot == std::string::npos)
            break;
        start = dot + 1;
    }
    if (node->is_object())
        throw std::invalid_argument("config: '" + path +
                                    "' is a group, not a value");
    *node = std::move(parsed);
}

} // namespace

Scenario scenario_from_json_text(const std::string& text,
                                 std::span<const std::string> overrides) {
    json file_json = json::object();
    const bool blank =
        text.find_first_not_of(" \t\r\n") == std::string::npos;
    if (!blank) {
        try {
            file_json = json::parse(text);
        } catch (const json::parse_error& e) {
            throw std::invalid_argument(std::string("config: parse failure: ") +
                                        e.what());
        }
    }
    // Parse onto defaults first so overrides can target every known key.
    Scenario base = scenario_from_json(file_json);
    json canonical = scenario_to_json(base);
    for (const std::string& o : overrides)
        apply_override(canonical, o);
    Scenario sc = scenario_from_json(canonical);
    sc.validate();
    sc.fingerprint = scenario_fingerprint(sc);
    return sc;
}

Scenario load_scenario(const std::string& path,
                       std::span<const std::string> overrides) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json_text(buf.str(), overrides);
}

std::string scenario_to_json_text(const Scenario& scenario) {
    return scenario_to_json(scenario).dump(2) + "\n";
}

std::uint64_t scenario_fingerprint(const Scenario& scenario) {
    const std::string canon = scenario_to_json(scenario).dump();
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : canon) {
        hash ^= static_cast<std::uint64_t>(c);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

} // namespace femtosim
