#include "sepsim/report.hpp"

#include <charconv>
#include <cstdint>
#include <system_error>

#include <json.hpp>

#include "sepsim/errors.hpp"

namespace sepsim {

namespace {

using ordered_json = nlohmann::ordered_json;

double parse_double(std::string_view token, int line) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError("not a number: '" + std::string(token) + "'", line);
  return value;
}

std::uint64_t parse_count(std::string_view token, int line) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError("not a count: '" + std::string(token) + "'", line);
  return value;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

std::string rows_to_csv(std::span<const EstimateRow> rows) {
  std::string out(kCsvHeader);
  out.push_back('\n');
  for (const EstimateRow& row : rows) {
    out += format_double(row.param);
    out.push_back(',');
    out += std::to_string(row.successes);
    out.push_back(',');
    out += std::to_string(row.trials);
    out.push_back(',');
    out += format_double(row.estimate);
    out.push_back(',');
    out += format_double(row.ci_low);
    out.push_back(',');
    out += format_double(row.ci_high);
    out.push_back(',');
    out += format_double(row.wall_time_ms);
    out.push_back('\n');
  }
  return out;
}

std::string rows_to_json(std::span<const EstimateRow> rows) {
  ordered_json arr = ordered_json::array();
  for (const EstimateRow& row : rows) {
    ordered_json obj;
    obj["param"] = row.param;
    obj["successes"] = row.successes;
    obj["trials"] = row.trials;
    obj["estimate"] = row.estimate;
    obj["ci_low"] = row.ci_low;
    obj["ci_high"] = row.ci_high;
    obj["wall_time_ms"] = row.wall_time_ms;
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::vector<EstimateRow> rows_from_csv(std::string_view text) {
  std::vector<EstimateRow> rows;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos
                                                 ? std::string_view::npos
                                                 : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line_no == 1) {
      if (line != kCsvHeader)
        throw ParseError("unexpected CSV header: '" + std::string(line) + "'", 1);
      continue;
    }
    std::vector<std::string_view> cells;
    std::size_t cell_pos = 0;
    while (true) {
      std::size_t comma = line.find(',', cell_pos);
      cells.push_back(line.substr(cell_pos, comma == std::string_view::npos
                                                ? std::string_view::npos
                                                : comma - cell_pos));
      if (comma == std::string_view::npos) break;
      cell_pos = comma + 1;
    }
    if (cells.size() != 7)
      throw ParseError("expected 7 columns, found " + std::to_string(cells.size()),
                       line_no);
    EstimateRow row;
    row.param = parse_double(cells[0], line_no);
    row.successes = parse_count(cells[1], line_no);
    row.trials = parse_count(cells[2], line_no);
    row.estimate = parse_double(cells[3], line_no);
    row.ci_low = parse_double(cells[4], line_no);
    row.ci_high = parse_double(cells[5], line_no);
    row.wall_time_ms = parse_double(cells[6], line_no);
    rows.push_back(row);
  }
  if (line_no == 0) throw ParseError("empty CSV input");
  return rows;
}

std::vector<EstimateRow> rows_from_json(std::string_view text) {
  ordered_json arr;
  try {
    arr = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!arr.is_array()) throw ParseError("expected a JSON array of rows");
  std::vector<EstimateRow> rows;
  rows.reserve(arr.size());
  for (const auto& obj : arr) {
    EstimateRow row;
    try {
      row.param = obj.at("param").get<double>();
      row.successes = obj.at("successes").get<std::uint64_t>();
      row.trials = obj.at("trials").get<std::uint64_t>();
      row.estimate = obj.at("estimate").get<double>();
      row.ci_low = obj.at("ci_low").get<double>();
      row.ci_high = obj.at("ci_high").get<double>();
      row.wall_time_ms = obj.at("wall_time_ms").get<double>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad row object: ") + e.what());
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sepsim
