#pragma once

#include <string>
#include <string_view>

#include "sepsim/core.hpp"
#include "sepsim/separability.hpp"

namespace sepsim {

// A concrete deployment: fixed targets, fixed sensors, one sensing radius.
struct Instance {
  TargetLayout layout;
  SensorField field;
};

// Text format:
//
//   radius = 0.1666
//   [targets]
//   0.8333 0.3333
//   0.5    0.8333
//   [sensors]
//   0.1667 0.1667
//
// One point per line, one or two coordinates. All points must agree on the
// coordinate count; it fixes the dimension. `radius =` may appear anywhere
// outside a point line and is required. Targets must be non-empty; the
// sensor section may be empty or absent. `#` starts a comment. Errors carry
// the offending line number.
Instance parse_instance_text(std::string_view text);
Instance load_instance(const std::string& path);

// Inverse of parse_instance_text up to float formatting (shortest
// round-trip decimals, so parse(format(x)) == x exactly).
std::string format_instance(const Instance& instance);

// Analysis result as a JSON object string:
//   {"n": ..., "fully_separable": ..., "num_identifiable": ...,
//    "targets": [{"x":..., "y":..., "identifiable":..., "unique_count":...}]}
// Targets appear in layout order (1D layouts are sorted ascending).
std::string report_to_json(const Instance& instance, const SeparabilityReport& report);

}  // namespace sepsim
