#pragma once

#include <span>
#include <string>

#include "femtosim/engine.hpp"

// Plot-ready emission of results. Every writer is deterministic: fixed
// column order, doubles at 15 significant digits, newline-terminated rows,
// sorted JSON keys. Identical inputs give byte-identical text.

namespace femtosim {

/// 15-significant-digit rendering used by every CSV column.
std::string format_g15(double v);

struct CurvePoint {
    double x = 0.0;
    double y = 0.0;
};

/// Two-column CSV with the given headers.
std::string curve_csv(const std::string& x_header,
                      const std::string& y_header,
                      std::span<const CurvePoint> points);

/// tier,p_hat,std_error,trials,master_seed,fingerprint,mean_cross_tier_ratio
std::string estimates_csv(const SimReport& report);

/// axis,value,label,tier,... (estimate columns as above)
std::string sweep_csv(const SimReport& report);

/// tier,ebio_db,perfect_channels,imperfect_channels
std::string capacity_csv(const SimReport& report);

/// femto_density,max_macro_users
std::string density_csv(const SimReport& report);

/// bs_id,active,utilization,allocated_khz; femto BSs by id, then one
/// bs_id=-1 row for the macro tier (active unused, utilization = load).
std::string traffic_csv(const TrafficState& state,
                        const SpectrumPlan& allocated);

/// Full report as JSON.
std::string report_json(const SimReport& report);

/// Traffic snapshot as JSON.
std::string traffic_json(const TrafficState& state,
                         const SpectrumPlan& allocated);

/// {macro_center, macro_radius, femto_sites[], cochannel_centers[], seed}.
std::string layout_json(const NetworkLayout& layout);

} // namespace femtosim
