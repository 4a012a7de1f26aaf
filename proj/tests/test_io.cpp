#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <charconv>
#include <string>
#include <vector>

#include <json.hpp>

#include "sepsim/config.hpp"
#include "sepsim/errors.hpp"
#include "sepsim/instance.hpp"
#include "sepsim/montecarlo.hpp"
#include "sepsim/report.hpp"
#include "sepsim/rng.hpp"
#include "sepsim/svg.hpp"

using namespace sepsim;

namespace {

EstimateRow sample_row() {
  EstimateRow row;
  row.param = 5608.0;
  row.successes = 398;
  row.trials = 400;
  row.estimate = 0.995;
  row.ci_low = 0.9819550815637568;
  row.ci_high = 0.9986277470452896;
  row.wall_time_ms = 0.0;
  return row;
}

bool rows_equal(const EstimateRow& a, const EstimateRow& b) {
  return a.param == b.param && a.successes == b.successes &&
         a.trials == b.trials && a.estimate == b.estimate &&
         a.ci_low == b.ci_low && a.ci_high == b.ci_high &&
         a.wall_time_ms == b.wall_time_ms;
}

}  // namespace

TEST_CASE("format_double emits shortest round-trip decimals") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(5608.0) == "5608");
  CHECK(format_double(-0.25) == "-0.25");

  SplitMix64 rng(19);
  for (int i = 0; i < 2000; ++i) {
    double v = (rng.next_unit() - 0.5) * std::pow(10.0, double(rng.next_below(12)) - 6.0);
    std::string s = format_double(v);
    double back = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), back);
    REQUIRE(ec == std::errc{});
    REQUIRE(ptr == s.data() + s.size());
    REQUIRE(back == v);
  }
}

TEST_CASE("CSV emission matches the documented header and round-trips") {
  std::vector<EstimateRow> rows{sample_row()};
  std::string csv = rows_to_csv(rows);
  CHECK(csv ==
        "param,successes,trials,estimate,ci_low,ci_high,wall_time_ms\n"
        "5608,398,400,0.995,0.9819550815637568,0.9986277470452896,0\n");

  std::vector<EstimateRow> back = rows_from_csv(csv);
  REQUIRE(back.size() == 1);
  CHECK(rows_equal(back[0], rows[0]));
}

TEST_CASE("JSON emission mirrors the CSV fields and round-trips") {
  std::vector<EstimateRow> rows{sample_row()};
  std::string json = rows_to_json(rows);
  auto doc = nlohmann::json::parse(json);
  REQUIRE(doc.is_array());
  REQUIRE(doc.size() == 1);
  CHECK(doc[0]["param"].get<double>() == 5608.0);
  CHECK(doc[0]["successes"].get<std::uint64_t>() == 398);
  CHECK(doc[0]["trials"].get<std::uint64_t>() == 400);
  CHECK(doc[0]["estimate"].get<double>() == 0.995);

  // nlohmann::json iterates alphabetically; the emitter's ordered document is
  // checked via the raw text instead.
  CHECK(json.find("\"param\"") < json.find("\"successes\""));
  CHECK(json.find("\"successes\"") < json.find("\"trials\""));
  CHECK(json.find("\"trials\"") < json.find("\"estimate\""));
  CHECK(json.find("\"estimate\"") < json.find("\"ci_low\""));
  CHECK(json.find("\"ci_low\"") < json.find("\"ci_high\""));
  CHECK(json.find("\"ci_high\"") < json.find("\"wall_time_ms\""));

  std::vector<EstimateRow> back = rows_from_json(json);
  REQUIRE(back.size() == 1);
  CHECK(rows_equal(back[0], sample_row()));
}

TEST_CASE("CSV parser rejects malformed input with line numbers") {
  CHECK_THROWS_AS(rows_from_csv("wrong,header\n1,2,3,4,5,6,7\n"), ParseError);
  try {
    rows_from_csv(
        "param,successes,trials,estimate,ci_low,ci_high,wall_time_ms\n"
        "1,2,3,4,5,6\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(rows_from_csv(""), ParseError);
  CHECK_THROWS_AS(
      rows_from_csv("param,successes,trials,estimate,ci_low,ci_high,wall_time_ms\n"
                    "1,x,3,4,5,6,7\n"),
      ParseError);
}

TEST_CASE("config parsing covers every scenario key") {
  RunConfig config = parse_run_config(
      "# comment line\n"
      "scenario = adversarial-partial\n"
      "n = 300\n"
      "gamma = 0.2\n"
      "eps = 0.5\n"
      "alpha = 0.9\n"
      "beta = 0.85\n"
      "policy = random-bit\n"
      "policy_p = 0.25\n"
      "sensor_rule = partial-sufficient\n"
      "trials = 123\n"
      "seed = 99\n"
      "timing = true\n"
      "format = json\n");
  CHECK(config.spec.scenario == Scenario::AdversarialPartial);
  CHECK(config.spec.n == 300);
  CHECK(config.spec.gamma == 0.2);
  CHECK(config.spec.eps == 0.5);
  CHECK(config.spec.alpha == 0.9);
  CHECK(config.spec.beta == 0.85);
  CHECK(config.spec.policy.kind == PolicyKind::RandomBit);
  CHECK(config.spec.policy.p == 0.25);
  CHECK(config.spec.sensor_rule == SensorRule::PartialSufficient);
  CHECK(config.spec.trials == 123);
  CHECK(config.spec.master_seed == 99);
  CHECK(config.spec.collect_timing);
  CHECK(config.format == "json");
  CHECK(config.sweep_axis.empty());

  RunConfig swept = parse_run_config(
      "scenario = grid-full\n"
      "n = 500\n"
      "m = 100  # overridden by the sweep\n"
      "sweep_axis = m\n"
      "sweep_values = 2108, 3108 4108\n"
      "markers = 3107.3\n");
  CHECK(swept.sweep_axis == "m");
  CHECK(swept.sweep_values == std::vector<double>{2108, 3108, 4108});
  CHECK(swept.markers == std::vector<double>{3107.3});
}

TEST_CASE("config parsing failures carry line numbers and key names") {
  try {
    parse_run_config("scenario = grid-full\nn = 10\nm = 5\nbogus = 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("bogus") != std::string::npos);
  }

  try {
    parse_run_config("scenario = grid-full\nn = 10\nm = 5\nn = 11\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("duplicate") != std::string::npos);
  }

  try {
    parse_run_config("scenario = grid-full\nm = 5\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("n") != std::string::npos);
  }

  try {
    parse_run_config("scenario = grid-full\nn = 10\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("m") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_run_config("n = 10\nm = 5\n"), ParseError);
  CHECK_THROWS_AS(parse_run_config("scenario = warp\nn = 10\nm = 5\n"), ParseError);
  CHECK_THROWS_AS(
      parse_run_config("scenario = grid-full\nn = ten\nm = 5\n"), ParseError);
  CHECK_THROWS_AS(
      parse_run_config("scenario = grid-full\nn = 10\nm = 5\nsweep_axis = m\n"),
      ParseError);
  CHECK_THROWS_AS(
      parse_run_config("scenario = grid-full\nn = 10\nm = 5\nsweep_values = 1\n"),
      ParseError);

  // min-spacing needs no sensor count.
  CHECK_NOTHROW(parse_run_config("scenario = min-spacing\nn = 100\n"));
}

TEST_CASE("instance files parse, validate, and round-trip") {
  const char* text =
      "# demo instance\n"
      "radius = 0.25\n"
      "[targets]\n"
      "0.5 0.5\n"
      "0.125 0.875\n"
      "[sensors]\n"
      "0.5 0.625\n";
  Instance inst = parse_instance_text(text);
  CHECK(inst.layout.region.dimension == 2);
  CHECK(inst.layout.n() == 2);
  CHECK(inst.field.size() == 1);
  CHECK(inst.field.radius == 0.25);

  std::string emitted = format_instance(inst);
  Instance again = parse_instance_text(emitted);
  REQUIRE(again.layout.n() == inst.layout.n());
  for (std::size_t i = 0; i < inst.layout.n(); ++i) {
    CHECK(again.layout.positions[i].x == inst.layout.positions[i].x);
    CHECK(again.layout.positions[i].y == inst.layout.positions[i].y);
  }
  CHECK(again.field.radius == inst.field.radius);

  Instance line = parse_instance_text("radius = 0.1\n[targets]\n0.7\n0.2\n");
  CHECK(line.layout.region.dimension == 1);
  CHECK(line.layout.positions[0].x == 0.2);  // 1D layouts sort ascending
  CHECK(line.layout.positions[1].x == 0.7);
  CHECK(line.field.size() == 0);
}

TEST_CASE("instance parsing failures carry line numbers") {
  try {
    parse_instance_text("radius = 0.1\n[targets]\n0.5\n0.5 0.5\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(std::string(e.what()).find("mixed") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_instance_text("[targets]\n0.5\n"), ParseError);
  CHECK_THROWS_AS(parse_instance_text("radius = 0.1\n[targets]\n"), ParseError);
  CHECK_THROWS_AS(parse_instance_text("radius = 0.1\n0.5\n[targets]\n0.4\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_instance_text("radius = 0.1\n[waffles]\n0.5\n"), ParseError);
  CHECK_THROWS_AS(parse_instance_text("radius = -1\n[targets]\n0.5\n"), ParseError);
  CHECK_THROWS_AS(parse_instance_text("radius = 0.1\n[targets]\n1.5\n"), ParseError);
  CHECK_THROWS_AS(
      parse_instance_text("radius = 0.1\nradius = 0.2\n[targets]\n0.5\n"),
      ParseError);
  CHECK_THROWS_AS(parse_instance_text("radius = 0.1\n[targets]\n0.1 0.2 0.3\n"),
                  ParseError);
}

TEST_CASE("analysis report serializes to a stable JSON shape") {
  // The lone sensor covers both targets, so neither is identifiable.
  Instance inst = parse_instance_text(
      "radius = 0.26\n[targets]\n0.25\n0.75\n[sensors]\n0.5\n");
  SeparabilityReport report = analyze(inst.layout, inst.field);
  std::string json = report_to_json(inst, report);
  auto doc = nlohmann::json::parse(json);
  CHECK(doc["n"].get<int>() == 2);
  CHECK(doc["fully_separable"].get<bool>() == false);
  CHECK(doc["num_identifiable"].get<int>() == 0);
  REQUIRE(doc["targets"].size() == 2);
  CHECK(doc["targets"][0]["x"].get<double>() == 0.25);
  CHECK(doc["targets"][0]["identifiable"].get<bool>() == false);
  CHECK(doc["targets"][0]["unique_count"].get<int>() == 0);
}

TEST_CASE("sweep SVG is deterministic and structured") {
  std::vector<EstimateRow> rows;
  for (int i = 0; i < 5; ++i) {
    EstimateRow row;
    row.param = 100.0 + 50.0 * i;
    row.successes = static_cast<std::uint64_t>(10 * i);
    row.trials = 50;
    row.estimate = 0.2 * i;
    row.ci_low = std::max(0.0, row.estimate - 0.1);
    row.ci_high = std::min(1.0, row.estimate + 0.1);
    rows.push_back(row);
  }

  std::string svg = render_sweep_svg(rows, "m", {195.6});
  CHECK(svg == render_sweep_svg(rows, "m", {195.6}));
  CHECK(svg.find("<svg xmlns") == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("<polygon") != std::string::npos);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(svg.find("success probability") != std::string::npos);
  CHECK(svg.find(">m</text>") != std::string::npos);
  CHECK(svg.rfind("</svg>\n") == svg.size() - 7);

  std::string one = render_sweep_svg({rows[0]}, "m", {});
  CHECK(one.find("<circle") != std::string::npos);
  CHECK(one.find("<polyline") == std::string::npos);

  CHECK_THROWS_AS(render_sweep_svg({}, "m", {}), std::invalid_argument);

  std::string escaped = render_sweep_svg({rows[0]}, "a<b&c", {});
  CHECK(escaped.find("a&lt;b&amp;c") != std::string::npos);
}
