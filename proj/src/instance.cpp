#include "sepsim/instance.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sepsim/errors.hpp"
#include "sepsim/report.hpp"

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

// Splits a point line into 1 or 2 coordinates.
Point parse_point(std::string_view line, int line_no, int& dim_out) {
  double coords[3];
  int count = 0;
  std::string_view rest = line;
  while (!rest.empty()) {
    std::size_t sep = rest.find_first_of(" \t");
    std::string_view item = rest.substr(0, sep);
    if (!item.empty()) {
      if (count == 2)
        throw ParseError("expected 1 or 2 coordinates per point", line_no);
      coords[count++] = parse_double(item, line_no);
    }
    if (sep == std::string_view::npos) break;
    rest.remove_prefix(sep + 1);
    rest = trim(rest);
  }
  if (count == 0) throw ParseError("expected 1 or 2 coordinates per point", line_no);
  dim_out = count;
  Point p;
  p.x = coords[0];
  p.y = count == 2 ? coords[1] : 0.0;
  return p;
}

}  // namespace

Instance parse_instance_text(std::string_view text) {
  enum class Section { None, Targets, Sensors };
  Section section = Section::None;
  std::vector<Point> targets, sensors;
  double radius = 0.0;
  bool have_radius = false;
  int dimension = 0;

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

    if (line == "[targets]") {
      section = Section::Targets;
      continue;
    }
    if (line == "[sensors]") {
      section = Section::Sensors;
      continue;
    }
    if (line.front() == '[')
      throw ParseError("unknown section '" + std::string(line) + "'", line_no);

    if (line.substr(0, 6) == "radius") {
      std::string_view rest = trim(line.substr(6));
      if (rest.empty() || rest.front() != '=')
        throw ParseError("expected 'radius = <value>'", line_no);
      if (have_radius) throw ParseError("duplicate radius", line_no);
      radius = parse_double(trim(rest.substr(1)), line_no);
      if (!(radius > 0.0) || !std::isfinite(radius))
        throw ParseError("radius must be positive and finite", line_no);
      have_radius = true;
      continue;
    }

    int dim = 0;
    Point p = parse_point(line, line_no, dim);
    if (dimension == 0) {
      dimension = dim;
    } else if (dim != dimension) {
      throw ParseError("mixed 1D and 2D points", line_no);
    }
    if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0)
      throw ParseError("coordinates must lie in [0, 1]", line_no);
    switch (section) {
      case Section::None:
        throw ParseError("point before any [targets] or [sensors] section", line_no);
      case Section::Targets:
        targets.push_back(p);
        break;
      case Section::Sensors:
        sensors.push_back(p);
        break;
    }
  }

  if (!have_radius) throw ParseError("missing radius");
  if (targets.empty()) throw ParseError("no targets given");

  Region region = dimension == 2 ? Region::square() : Region::interval();
  Instance instance;
  instance.layout = make_layout(region, std::move(targets), LayoutModel::Uniform);
  instance.field.positions = std::move(sensors);
  instance.field.radius = radius;
  return instance;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_instance_text(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string format_instance(const Instance& instance) {
  const bool two_d = instance.layout.region.dimension == 2;
  std::string out = "radius = " + format_double(instance.field.radius) + "\n";
  out += "[targets]\n";
  for (const Point& p : instance.layout.positions) {
    out += format_double(p.x);
    if (two_d) out += " " + format_double(p.y);
    out += "\n";
  }
  out += "[sensors]\n";
  for (const Point& p : instance.field.positions) {
    out += format_double(p.x);
    if (two_d) out += " " + format_double(p.y);
    out += "\n";
  }
  return out;
}

std::string report_to_json(const Instance& instance,
                           const SeparabilityReport& report) {
  nlohmann::ordered_json doc;
  doc["n"] = instance.layout.n();
  doc["fully_separable"] = report.fully_separable;
  doc["num_identifiable"] = report.num_identifiable;
  nlohmann::ordered_json targets = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < instance.layout.n(); ++i) {
    nlohmann::ordered_json t;
    t["x"] = instance.layout.positions[i].x;
    t["y"] = instance.layout.positions[i].y;
    t["identifiable"] = static_cast<bool>(report.identifiable[i]);
    t["unique_count"] = report.unique_count[i];
    targets.push_back(std::move(t));
  }
  doc["targets"] = std::move(targets);
  return doc.dump(2) + "\n";
}

}  // namespace sepsim
