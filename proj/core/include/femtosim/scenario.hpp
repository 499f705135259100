#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "femtosim/engine.hpp"

// Scenario configuration IO. The on-disk format is one JSON document whose
// groups mirror the Scenario sub-structs; an empty file means pure defaults.
// Overrides are flat dotted key paths ("engine.trials=50000") applied after
// the file. Unknown keys, type mismatches and out-of-range values are all
// rejected with the offending key path in the message.

namespace femtosim {

/// Parse a scenario from JSON text (empty or whitespace-only text means
/// defaults), apply overrides, validate, and stamp the fingerprint.
Scenario scenario_from_json_text(const std::string& text,
                                 std::span<const std::string> overrides);

/// Load a scenario file; see scenario_from_json_text.
Scenario load_scenario(const std::string& path,
                       std::span<const std::string> overrides);

/// Canonical JSON rendering of every parameter that affects results
/// (sorted keys, fingerprint excluded).
std::string scenario_to_json_text(const Scenario& scenario);

/// FNV-1a (64-bit) over the canonical JSON rendering.
std::uint64_t scenario_fingerprint(const Scenario& scenario);

} // namespace femtosim
