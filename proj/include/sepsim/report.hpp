#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sepsim/montecarlo.hpp"

namespace sepsim {

inline constexpr std::string_view kCsvHeader =
    "param,successes,trials,estimate,ci_low,ci_high,wall_time_ms";

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

/// CSV with the pinned header; one line per row, LF endings, UTF-8.
std::string rows_to_csv(std::span<const EstimateRow> rows);

/// JSON array of objects with the same field names as the CSV columns.
std::string rows_to_json(std::span<const EstimateRow> rows);

std::vector<EstimateRow> rows_from_csv(std::string_view text);
std::vector<EstimateRow> rows_from_json(std::string_view text);

}  // namespace sepsim
