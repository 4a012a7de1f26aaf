#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sepsim/montecarlo.hpp"

namespace sepsim {

/// A parsed experiment configuration: the spec plus the sweep/plot/output
/// settings that only the command layer consumes.
struct RunConfig {
  ExperimentSpec spec;
  std::string sweep_axis;            // empty = single estimate
  std::vector<double> sweep_values;
  std::vector<double> markers;       // vertical marker positions for plots
  std::string format = "csv";        // csv | json
};

/// Flat `key = value` text, `#` starts a comment, blank lines ignored.
/// Unknown or duplicate keys and malformed values fail with the line number.
RunConfig parse_run_config(std::string_view text);

/// Reads and parses; IO failures raise std::runtime_error naming the path.
RunConfig load_run_config(const std::string& path);

std::string scenario_name(Scenario scenario);
Scenario scenario_from_name(std::string_view name);

}  // namespace sepsim
