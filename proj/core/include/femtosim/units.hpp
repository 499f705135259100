#pragma once

#include <cmath>

// Power quantities follow one project-wide convention:
//   dB  = 10 * log10(linear ratio)
//   dBm = 10 * log10(power in mW)
// Every public function states whether it works in the dB or linear domain.

namespace femtosim {

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

inline double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

inline double mw_to_dbm(double mw) { return 10.0 * std::log10(mw); }

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

} // namespace femtosim
