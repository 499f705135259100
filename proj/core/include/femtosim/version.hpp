#pragma once

namespace femtosim {

inline constexpr const char* kVersion = "0.1.0";

} // namespace femtosim
