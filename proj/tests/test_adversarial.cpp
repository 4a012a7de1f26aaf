#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "sepsim/adversarial.hpp"
#include "sepsim/core.hpp"
#include "sepsim/rng.hpp"
#include "sepsim/separability.hpp"

using namespace sepsim;

TEST_CASE("adversary model validation") {
  AdversaryModel model;
  model.gamma = 0.7;
  CHECK_THROWS_WITH_AS(model.validate(),
                       "adversary probability must satisfy 0 < gamma < 0.5",
                       std::invalid_argument);
  model.gamma = 0.0;
  CHECK_THROWS_AS(model.validate(), std::invalid_argument);
  model.gamma = 0.5;
  CHECK_THROWS_AS(model.validate(), std::invalid_argument);

  AdversaryPolicy bad;
  bad.kind = PolicyKind::RandomBit;
  bad.p = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("deployment thins the Poisson field at rate gamma") {
  Region line = Region::interval();
  AdversaryModel model;
  model.gamma = 0.3;

  SplitMix64 rng(101);
  std::uint64_t sensors = 0, adversaries = 0;
  double good_total = 0.0;
  const int reps = 10000;
  for (int i = 0; i < reps; ++i) {
    SensorField field = deploy_adversarial_field(100.0, line, 0.01, model, rng);
    sensors += field.size();
    std::uint64_t bad = 0;
    for (std::size_t s = 0; s < field.size(); ++s) bad += field.is_adversary(s);
    adversaries += bad;
    good_total += static_cast<double>(field.size() - bad);
  }
  double fraction = static_cast<double>(adversaries) / static_cast<double>(sensors);
  CHECK(std::abs(fraction - 0.3) < 0.015);

  // Good-sensor counts are Poisson((1-gamma)*100); the mean of `reps`
  // deployments has standard error sqrt(70/reps).
  double good_mean = good_total / reps;
  CHECK(std::abs(good_mean - 70.0) < 4.0 * std::sqrt(70.0 / reps));

  CHECK_THROWS_AS(deploy_adversarial_field(0.0, line, 0.01, model, rng),
                  std::invalid_argument);
  CHECK_THROWS_AS(deploy_adversarial_field(10.0, line, 0.0, model, rng),
                  std::invalid_argument);
}

TEST_CASE("deployment is deterministic in the seed") {
  AdversaryModel model;
  model.gamma = 0.2;
  SensorField a =
      deploy_adversarial_field(50.0, Region::interval(), 0.01, model, std::uint64_t{9});
  SensorField b =
      deploy_adversarial_field(50.0, Region::interval(), 0.01, model, std::uint64_t{9});
  REQUIRE(a.size() == b.size());
  CHECK(a.adversary == b.adversary);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.positions[i].x == b.positions[i].x);
}

TEST_CASE("truthful sensors report sense(); flip inverts; constants ignore it") {
  TargetLayout layout = grid_layout(4, Region::interval());
  TargetConfiguration cfg = TargetConfiguration::from_mask(4, 0b0011);

  SensorField field;
  field.positions = {{0.125, 0.0}, {0.375, 0.0}, {0.625, 0.0}, {0.875, 0.0}};
  field.radius = 0.1;

  auto truthful =
      reported_observations(field, layout, cfg, AdversaryPolicy{}, std::uint64_t{1});
  CHECK(truthful == observation_vector(field, layout, cfg));
  CHECK(truthful == std::vector<std::uint8_t>{1, 1, 0, 0});

  field.adversary = {1, 1, 1, 1};
  auto flipped =
      reported_observations(field, layout, cfg, AdversaryPolicy{}, std::uint64_t{1});
  CHECK(flipped == std::vector<std::uint8_t>{0, 0, 1, 1});

  TargetConfiguration empty{std::vector<std::uint8_t>(4, 0)};
  auto ones =
      reported_observations(field, layout, empty, AdversaryPolicy{}, std::uint64_t{1});
  CHECK(ones == std::vector<std::uint8_t>{1, 1, 1, 1});

  AdversaryPolicy one{PolicyKind::ConstantOne, 0.5};
  AdversaryPolicy zero{PolicyKind::ConstantZero, 0.5};
  CHECK(reported_observations(field, layout, cfg, one, std::uint64_t{1}) ==
        std::vector<std::uint8_t>{1, 1, 1, 1});
  CHECK(reported_observations(field, layout, cfg, zero, std::uint64_t{1}) ==
        std::vector<std::uint8_t>{0, 0, 0, 0});
}

TEST_CASE("random-bit adversaries report Bernoulli(p) regardless of truth") {
  TargetLayout layout = grid_layout(2, Region::interval());
  TargetConfiguration cfg = TargetConfiguration::all_occupied(2);
  SensorField field;
  field.positions = {{0.25, 0.0}, {0.75, 0.0}};
  field.radius = 0.3;
  field.adversary = {1, 1};

  AdversaryPolicy policy{PolicyKind::RandomBit, 0.5};
  SplitMix64 rng(113);
  double total = 0.0;
  const int reps = 20000;
  for (int i = 0; i < reps; ++i) {
    auto reports = reported_observations(field, layout, cfg, policy, rng);
    total += reports[0] + reports[1];
  }
  double mean = total / (2.0 * reps);
  CHECK(std::abs(mean - 0.5) < 0.01);

  AdversaryPolicy always{PolicyKind::RandomBit, 1.0};
  CHECK(reported_observations(field, layout, cfg, always, std::uint64_t{4}) ==
        std::vector<std::uint8_t>{1, 1});
}

TEST_CASE("majority decoding tallies unique coverers only") {
  // Two sensors uniquely cover target 0; a third covers both targets and
  // must not vote.
  TargetLayout layout = make_layout(Region::interval(),
                                    {{0.2, 0.0}, {0.8, 0.0}}, LayoutModel::Uniform);
  SensorField field;
  field.positions = {{0.18, 0.0}, {0.22, 0.0}, {0.5, 0.0}};
  field.radius = 0.35;
  CoverageMap map = coverage_map(layout, field);
  REQUIRE(map.per_target_unique_sensors[0] == std::vector<std::uint32_t>{0, 1});
  REQUIRE(map.per_target_unique_sensors[1].empty());

  MajorityVerdicts verdicts = majority_decode({1, 1, 0}, map);
  CHECK(verdicts.verdict[0] == Verdict::Occupied);
  CHECK(verdicts.vote_margin[0] == 2);
  CHECK(verdicts.verdict[1] == Verdict::Unknown);
  CHECK(verdicts.vote_margin[1] == 0);

  MajorityVerdicts tie = majority_decode({1, 0, 1}, map);
  CHECK(tie.verdict[0] == Verdict::Unknown);
  CHECK(tie.vote_margin[0] == 0);

  MajorityVerdicts down = majority_decode({0, 0, 1}, map);
  CHECK(down.verdict[0] == Verdict::Empty);
  CHECK(down.vote_margin[0] == -2);

  CHECK_THROWS_AS(majority_decode({1, 0}, map), std::invalid_argument);
}

TEST_CASE("unique coverage margin counts good minus adversarial") {
  TargetLayout layout = grid_layout(1, Region::interval());
  SensorField field;
  field.positions = {{0.45, 0.0}, {0.5, 0.0}, {0.55, 0.0}};
  field.radius = 0.2;
  field.adversary = {0, 1, 0};
  CoverageMap map = coverage_map(layout, field);
  REQUIRE(map.per_target_unique_sensors[0].size() == 3);

  auto q = unique_coverage_margin(map, field);
  REQUIRE(q.size() == 1);
  CHECK(q[0] == 1);  // 2 good - 1 adversarial
}

TEST_CASE("flip-policy verdicts are correct exactly when the margin is positive") {
  AdversaryModel model;
  model.gamma = 0.3;
  SplitMix64 rng(127);
  for (int rep = 0; rep < 150; ++rep) {
    std::size_t n = 2 + rng.next_below(20);
    TargetLayout layout = grid_layout(n, Region::interval());
    double radius = 1.0 / (2.0 * static_cast<double>(n));
    SensorField field =
        deploy_adversarial_field(4.0 * static_cast<double>(n),
                                 Region::interval(), radius, model, rng);
    TargetConfiguration cfg =
        TargetConfiguration::from_mask(n, rng.next_below(1ull << n));

    CoverageMap map = coverage_map(layout, field);
    auto reports = reported_observations(field, layout, cfg, AdversaryPolicy{}, rng);
    MajorityVerdicts verdicts = majority_decode(reports, map);
    auto q = unique_coverage_margin(map, field);

    for (std::size_t t = 0; t < n; ++t) {
      bool correct = verdicts.verdict[t] ==
                     (cfg.occupied[t] ? Verdict::Occupied : Verdict::Empty);
      CHECK(correct == (q[t] > 0));
    }
  }
}

TEST_CASE("a field with no adversaries reduces to the truthful pipeline") {
  AdversaryModel model;
  model.gamma = 0.25;
  SplitMix64 rng(131);
  SensorField field =
      deploy_adversarial_field(60.0, Region::interval(), 0.02, model, rng);
  field.adversary.assign(field.adversary.size(), 0);

  TargetLayout layout = grid_layout(10, Region::interval());
  TargetConfiguration cfg = TargetConfiguration::from_mask(10, 0b1011001110);
  CoverageMap map = coverage_map(layout, field);

  auto reports = reported_observations(field, layout, cfg, AdversaryPolicy{}, rng);
  CHECK(reports == observation_vector(field, layout, cfg));

  MajorityVerdicts majority = majority_decode(reports, map);
  DecodedConfiguration truthful = decode_truthful(reports, map);
  for (std::size_t t = 0; t < 10; ++t) {
    if (!map.per_target_unique_sensors[t].empty())
      CHECK(majority.verdict[t] == truthful.verdict[t]);
  }
}

TEST_CASE("chernoff bound values and domain") {
  CHECK(chernoff_success_bound(0.25, 20.0) ==
        doctest::Approx(0.931402001723).epsilon(1e-10));
  CHECK(chernoff_success_bound(0.1, 20.0) ==
        doctest::Approx(0.9996645374).epsilon(1e-9));
  CHECK(chernoff_success_bound(0.2, 20.0) ==
        doctest::Approx(0.9816843611).epsilon(1e-9));
  CHECK(chernoff_success_bound(0.3, 20.0) ==
        doctest::Approx(0.8116959283).epsilon(1e-9));
  CHECK(chernoff_success_bound(0.4, 20.0) ==
        doctest::Approx(0.3324106618).epsilon(1e-9));
  CHECK(chernoff_success_bound(0.4999999, 20.0) < 1e-4);
  CHECK_THROWS_AS(chernoff_success_bound(0.6, 20.0), std::invalid_argument);
  CHECK_THROWS_AS(chernoff_success_bound(0.25, 0.0), std::invalid_argument);
}

TEST_CASE("empirical margin success dominates the chernoff bound") {
  // Grid targets with r = 1/2n make each target's unique-coverage interval
  // exactly 1/n wide, so Q_i is a difference of independent Poisson counts
  // with means (1-gamma)*lambda and gamma*lambda.
  const std::size_t n = 50;
  const double lambda = 20.0;
  Region line = Region::interval();
  TargetLayout layout = grid_layout(n, line);
  const double radius = 1.0 / (2.0 * static_cast<double>(n));

  const double truths[] = {0.9999435411, 0.9965817652, 0.9564098362, 0.7838500919};
  int gi = 0;
  for (double gamma : {0.1, 0.2, 0.3, 0.4}) {
    AdversaryModel model;
    model.gamma = gamma;
    SplitMix64 rng(1000 + gi);
    std::uint64_t hits = 0, total = 0;
    const int trials = 200;
    for (int trial = 0; trial < trials; ++trial) {
      SensorField field = deploy_adversarial_field(
          lambda * static_cast<double>(n), line, radius, model, rng);
      CoverageMap map = coverage_map(layout, field);
      auto q = unique_coverage_margin(map, field);
      for (std::int64_t margin : q) hits += margin > 0 ? 1 : 0;
      total += n;
    }
    double empirical = static_cast<double>(hits) / static_cast<double>(total);
    double bound = chernoff_success_bound(gamma, lambda);
    double se = std::sqrt(empirical * (1.0 - empirical) /
                          static_cast<double>(total));
    CHECK(empirical >= bound - 3.0 * se);
    CHECK(std::abs(empirical - truths[gi]) < 5.0 * std::sqrt(truths[gi] *
                  (1.0 - truths[gi]) / static_cast<double>(total)) + 1e-4);
    ++gi;
  }
}

TEST_CASE("sensor-intensity thresholds") {
  CHECK(adversarial_full_m(300, 0.2, 0.5) ==
        doctest::Approx(12833.510568).epsilon(1e-9));
  CHECK(adversarial_partial_m(300, 0.2, 0.5, 0.9, 0.9) ==
        doctest::Approx(10361.6329185).epsilon(1e-9));

  // As gamma and eps vanish the rate factor approaches 1 and the intensity
  // approaches n ln n.
  double nlogn = 300.0 * std::log(300.0);
  CHECK(adversarial_full_m(300, 1e-9, 1e-12) ==
        doctest::Approx(nlogn).epsilon(1e-3));

  CHECK_THROWS_AS(adversarial_full_m(300, 0.6, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(adversarial_full_m(300, 0.2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(adversarial_partial_m(300, 0.2, 0.5, 1.0, 0.9),
                  std::invalid_argument);
}
