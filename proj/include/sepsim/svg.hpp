#pragma once

#include <string>
#include <vector>

#include "sepsim/montecarlo.hpp"

namespace sepsim {

// Renders a sweep as a standalone SVG document: estimated probability (with
// its confidence band) against the swept parameter. `markers` draws dashed
// vertical reference lines, e.g. at predicted thresholds; they extend the
// x range if they fall outside the data. Output is deterministic: fixed
// 800x500 canvas and shortest round-trip number formatting throughout.
std::string render_sweep_svg(const std::vector<EstimateRow>& rows,
                             const std::string& axis_label,
                             const std::vector<double>& markers = {});

}  // namespace sepsim
