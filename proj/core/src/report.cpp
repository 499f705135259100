#include "femtosim/report.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace femtosim {

namespace {

using nlohmann::json;

std::string hex_fingerprint(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(v));
    return buf;
}

void append_estimate_columns(std::ostringstream& out,
                             const OutageEstimate& est) {
    out << format_g15(est.p_hat) << ',' << format_g15(est.std_error) << ','
        << est.trials << ',' << est.master_seed << ','
        << hex_fingerprint(est.fingerprint) << ','
        << format_g15(est.mean_cross_tier_ratio) << '\n';
}

json estimate_to_json(const OutageEstimate& est) {
    json j;
    j["p_hat"] = est.p_hat;
    j["std_error"] = est.std_error;
    j["trials"] = est.trials;
    j["master_seed"] = est.master_seed;
    j["fingerprint"] = hex_fingerprint(est.fingerprint);
    j["mean_cross_tier_ratio"] = est.mean_cross_tier_ratio;
    return j;
}

} // namespace

std::string format_g15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.15g", v);
    return buf;
}

std::string curve_csv(const std::string& x_header,
                      const std::string& y_header,
                      std::span<const CurvePoint> points) {
    std::ostringstream out;
    out << x_header << ',' << y_header << '\n';
    for (const CurvePoint& p : points)
        out << format_g15(p.x) << ',' << format_g15(p.y) << '\n';
    return out.str();
}

std::string estimates_csv(const SimReport& report) {
    std::ostringstream out;
    out << "tier,p_hat,std_error,trials,master_seed,fingerprint,"
           "mean_cross_tier_ratio\n";
    const char* tiers[] = {"macro", "femto"};
    for (std::size_t i = 0; i < report.estimates.size(); ++i) {
        out << (i < 2 ? tiers[i] : "extra") << ',';
        append_estimate_columns(out, report.estimates[i]);
    }
    return out.str();
}

std::string sweep_csv(const SimReport& report) {
    std::ostringstream out;
    out << "axis,value,label,tier,p_hat,std_error,trials,master_seed,"
           "fingerprint,mean_cross_tier_ratio\n";
    for (const SweepPoint& p : report.sweep_points) {
        out << p.axis << ',' << format_g15(p.value) << ',' << p.label << ','
            << p.tier << ',';
        append_estimate_columns(out, p.estimate);
    }
    return out.str();
}

std::string capacity_csv(const SimReport& report) {
    std::ostringstream out;
    out << "tier,ebio_db,perfect_channels,imperfect_channels\n";
    for (const CapacityPoint& p : report.capacity_points)
        out << p.tier << ',' << format_g15(p.ebio_db) << ','
            << format_g15(p.perfect_channels) << ','
            << format_g15(p.imperfect_channels) << '\n';
    return out.str();
}

std::string density_csv(const SimReport& report) {
    std::ostringstream out;
    out << "femto_density,max_macro_users\n";
    for (const DensityPoint& p : report.density_points)
        out << format_g15(p.femto_density) << ',' << p.max_macro_users
            << '\n';
    return out.str();
}

std::string traffic_csv(const TrafficState& state,
                        const SpectrumPlan& allocated) {
    std::ostringstream out;
    out << "bs_id,active,utilization,allocated_khz\n";
    for (std::size_t i = 0; i < state.femto_active.size(); ++i) {
        const double util = static_cast<double>(state.femto_active[i]) /
                            TrafficState::kMaxUsersPerBs;
        const double khz = i < allocated.per_femto_khz.size()
                               ? allocated.per_femto_khz[i]
                               : 0.0;
        out << i << ',' << state.femto_active[i] << ',' << format_g15(util)
            << ',' << format_g15(khz) << '\n';
    }
    out << "-1,-1," << format_g15(state.macro_load) << ','
        << format_g15(allocated.macro_share_khz) << '\n';
    return out.str();
}

std::string report_json(const SimReport& report) {
    json j;
    j["kind"] = report.kind;
    j["master_seed"] = report.master_seed;
    j["fingerprint"] = hex_fingerprint(report.fingerprint);
    j["estimates"] = json::array();
    const char* tiers[] = {"macro", "femto"};
    for (std::size_t i = 0; i < report.estimates.size(); ++i) {
        json e = estimate_to_json(report.estimates[i]);
        e["tier"] = i < 2 ? tiers[i] : "extra";
        j["estimates"].push_back(std::move(e));
    }
    j["sweep_points"] = json::array();
    for (const SweepPoint& p : report.sweep_points) {
        json e;
        e["axis"] = p.axis;
        e["value"] = p.value;
        e["label"] = p.label;
        e["tier"] = p.tier;
        e["estimate"] = estimate_to_json(p.estimate);
        j["sweep_points"].push_back(std::move(e));
    }
    j["capacity_points"] = json::array();
    for (const CapacityPoint& p : report.capacity_points) {
        json e;
        e["tier"] = p.tier;
        e["ebio_db"] = p.ebio_db;
        e["perfect_channels"] = p.perfect_channels;
        e["imperfect_channels"] = p.imperfect_channels;
        j["capacity_points"].push_back(std::move(e));
    }
    j["density_points"] = json::array();
    for (const DensityPoint& p : report.density_points) {
        json e;
        e["femto_density"] = p.femto_density;
        e["max_macro_users"] = p.max_macro_users;
        j["density_points"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

std::string traffic_json(const TrafficState& state,
                         const SpectrumPlan& allocated) {
    json j;
    j["lambda"] = state.lambda;
    j["macro_load"] = state.macro_load;
    j["macro_share_khz"] = allocated.macro_share_khz;
    j["total_khz"] = allocated.total_khz;
    j["femto"] = json::array();
    for (std::size_t i = 0; i < state.femto_active.size(); ++i) {
        json e;
        e["bs_id"] = i;
        e["active"] = state.femto_active[i];
        e["utilization"] = static_cast<double>(state.femto_active[i]) /
                           TrafficState::kMaxUsersPerBs;
        e["allocated_khz"] = i < allocated.per_femto_khz.size()
                                 ? allocated.per_femto_khz[i]
                                 : 0.0;
        j["femto"].push_back(std::move(e));
    }
    return j.dump(2) + "\n";
}

std::string layout_json(const NetworkLayout& layout) {
    json j;
    j["macro_center"] = {{"x", layout.macro_center.x},
                         {"y", layout.macro_center.y}};
    j["macro_radius"] = layout.macro_radius_m;
    j["femto_sites"] = json::array();
    for (const Point2D& p : layout.femto_sites)
        j["femto_sites"].push_back({{"x", p.x}, {"y", p.y}});
    j["cochannel_centers"] = json::array();
    for (const Point2D& p : layout.cochannel_centers)
        j["cochannel_centers"].push_back({{"x", p.x}, {"y", p.y}});
    j["seed"] = layout.seed;
    return j.dump(2) + "\n";
}

} // namespace femtosim
