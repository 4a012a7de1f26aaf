#include "sepsim/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "sepsim/errors.hpp"

namespace sepsim {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

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
    throw ParseError("not a non-negative integer: '" + std::string(token) + "'", line);
  return value;
}

std::vector<double> parse_list(std::string_view token, int line) {
  std::vector<double> values;
  std::string_view rest = token;
  while (!rest.empty()) {
    std::size_t sep = rest.find_first_of(", \t");
    std::string_view item = trim(rest.substr(0, sep));
    if (!item.empty()) values.push_back(parse_double(item, line));
    if (sep == std::string_view::npos) break;
    rest.remove_prefix(sep + 1);
  }
  return values;
}

bool parse_bool(std::string_view token, int line) {
  if (token == "true" || token == "1" || token == "yes") return true;
  if (token == "false" || token == "0" || token == "no") return false;
  throw ParseError("not a boolean: '" + std::string(token) + "'", line);
}

SensorRule sensor_rule_from_name(std::string_view name, int line) {
  if (name == "explicit") return SensorRule::Explicit;
  if (name == "full-sufficient") return SensorRule::FullSufficient;
  if (name == "full-necessary") return SensorRule::FullNecessary;
  if (name == "partial-sufficient") return SensorRule::PartialSufficient;
  if (name == "partial-necessary") return SensorRule::PartialNecessary;
  throw ParseError("unknown sensor_rule '" + std::string(name) + "'", line);
}

PolicyKind policy_from_name(std::string_view name, int line) {
  if (name == "flip") return PolicyKind::Flip;
  if (name == "random-bit") return PolicyKind::RandomBit;
  if (name == "constant-one") return PolicyKind::ConstantOne;
  if (name == "constant-zero") return PolicyKind::ConstantZero;
  throw ParseError("unknown policy '" + std::string(name) + "'", line);
}

}  // namespace

std::string scenario_name(Scenario scenario) {
  switch (scenario) {
    case Scenario::GridFull: return "grid-full";
    case Scenario::GridPartial: return "grid-partial";
    case Scenario::RandomFull: return "random-full";
    case Scenario::RandomPartial: return "random-partial";
    case Scenario::AdversarialFull: return "adversarial-full";
    case Scenario::AdversarialPartial: return "adversarial-partial";
    case Scenario::MinSpacing: return "min-spacing";
    case Scenario::Coupon: return "coupon";
  }
  return "unknown";
}

Scenario scenario_from_name(std::string_view name) {
  if (name == "grid-full") return Scenario::GridFull;
  if (name == "grid-partial") return Scenario::GridPartial;
  if (name == "random-full") return Scenario::RandomFull;
  if (name == "random-partial") return Scenario::RandomPartial;
  if (name == "adversarial-full") return Scenario::AdversarialFull;
  if (name == "adversarial-partial") return Scenario::AdversarialPartial;
  if (name == "min-spacing") return Scenario::MinSpacing;
  if (name == "coupon") return Scenario::Coupon;
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

RunConfig parse_run_config(std::string_view text) {
  RunConfig config;
  std::map<std::string, int> seen;
  bool have_scenario = false, have_n = false, have_m = false, have_rule = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos
                                                ? std::string_view::npos
                                                : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    std::size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view line = trim(raw);
    if (line.empty()) continue;

    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected 'key = value'", line_no);
    std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", line_no);
    if (value.empty()) throw ParseError("empty value for key '" + key + "'", line_no);
    auto [it, inserted] = seen.emplace(key, line_no);
    if (!inserted)
      throw ParseError("duplicate key '" + key + "' (first on line " +
                           std::to_string(it->second) + ")",
                       line_no);

    ExperimentSpec& spec = config.spec;
    if (key == "scenario") {
      try {
        spec.scenario = scenario_from_name(value);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line_no);
      }
      have_scenario = true;
    } else if (key == "dimension") {
      std::uint64_t dim = parse_count(value, line_no);
      if (dim != 1 && dim != 2) throw ParseError("dimension must be 1 or 2", line_no);
      spec.dimension = static_cast<int>(dim);
    } else if (key == "boundary") {
      if (value == "clip") spec.boundary = BoundaryMode::Clip;
      else if (value == "torus") spec.boundary = BoundaryMode::Torus;
      else throw ParseError("boundary must be clip or torus", line_no);
    } else if (key == "n") {
      spec.n = parse_count(value, line_no);
      have_n = true;
    } else if (key == "r") {
      spec.r = parse_double(value, line_no);
    } else if (key == "m") {
      spec.m = parse_double(value, line_no);
      have_m = true;
    } else if (key == "sensor_rule") {
      spec.sensor_rule = sensor_rule_from_name(value, line_no);
      have_rule = spec.sensor_rule != SensorRule::Explicit;
    } else if (key == "a") {
      spec.a = parse_double(value, line_no);
    } else if (key == "c_n") {
      spec.c_n = parse_double(value, line_no);
    } else if (key == "c") {
      spec.c = parse_double(value, line_no);
    } else if (key == "alpha") {
      spec.alpha = parse_double(value, line_no);
    } else if (key == "beta") {
      spec.beta = parse_double(value, line_no);
    } else if (key == "alpha1") {
      spec.alpha1 = parse_double(value, line_no);
    } else if (key == "theta1") {
      spec.theta1 = parse_double(value, line_no);
    } else if (key == "theta2") {
      spec.theta2 = parse_double(value, line_no);
    } else if (key == "gamma") {
      spec.gamma = parse_double(value, line_no);
    } else if (key == "eps") {
      spec.eps = parse_double(value, line_no);
    } else if (key == "policy") {
      spec.policy.kind = policy_from_name(value, line_no);
    } else if (key == "policy_p") {
      spec.policy.p = parse_double(value, line_no);
    } else if (key == "d") {
      spec.d = parse_double(value, line_no);
    } else if (key == "trials") {
      spec.trials = parse_count(value, line_no);
    } else if (key == "seed") {
      spec.master_seed = parse_count(value, line_no);
    } else if (key == "timing") {
      spec.collect_timing = parse_bool(value, line_no);
    } else if (key == "sweep_axis") {
      config.sweep_axis = std::string(value);
    } else if (key == "sweep_values") {
      config.sweep_values = parse_list(value, line_no);
    } else if (key == "markers") {
      config.markers = parse_list(value, line_no);
    } else if (key == "format") {
      if (value != "csv" && value != "json")
        throw ParseError("format must be csv or json", line_no);
      config.format = std::string(value);
    } else {
      throw ParseError("unknown key '" + key + "'", line_no);
    }
  }

  if (!have_scenario) throw ParseError("missing required key: scenario");
  if (!have_n && config.sweep_axis != "n")
    throw ParseError("missing required key: n");
  Scenario sc = config.spec.scenario;
  // A sweep over m supplies the sensor count per row.
  bool needs_m = sc != Scenario::MinSpacing && config.sweep_axis != "m";
  if (needs_m && !have_m && !have_rule)
    throw ParseError("missing required key: m (or a sensor_rule preset)");
  if (!config.sweep_axis.empty() && config.sweep_values.empty())
    throw ParseError("sweep_axis given but sweep_values is missing");
  if (config.sweep_axis.empty() && !config.sweep_values.empty())
    throw ParseError("sweep_values given but sweep_axis is missing");
  return config;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_run_config(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace sepsim
