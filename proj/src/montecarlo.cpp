#include "sepsim/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

#include "sepsim/scaling.hpp"

namespace sepsim {

namespace {

bool is_grid(Scenario s) {
  return s == Scenario::GridFull || s == Scenario::GridPartial;
}
bool is_random(Scenario s) {
  return s == Scenario::RandomFull || s == Scenario::RandomPartial;
}
bool is_adversarial(Scenario s) {
  return s == Scenario::AdversarialFull || s == Scenario::AdversarialPartial;
}
bool is_partial(Scenario s) {
  return s == Scenario::GridPartial || s == Scenario::RandomPartial ||
         s == Scenario::AdversarialPartial;
}

// ceil(alpha*n) with a guard against products like 0.9*1000 rounding up to
// 900.0000000000000222 and demanding 901.
std::uint64_t partial_threshold(double alpha, std::size_t n) {
  double k = std::ceil(alpha * static_cast<double>(n) - 1e-9);
  return k <= 0.0 ? 0 : static_cast<std::uint64_t>(k);
}

RandomParams to_random_params(const ExperimentSpec& spec) {
  RandomParams p;
  p.n = static_cast<double>(spec.n);
  p.c_n = spec.resolved_c_n();
  p.f_n = spec.c;
  p.alpha = spec.alpha;
  p.beta = spec.beta;
  p.alpha1 = spec.resolved_alpha1();
  p.theta1 = spec.theta1;
  p.theta2 = spec.theta2;
  p.a = spec.a;
  return p;
}

}  // namespace

void ExperimentSpec::validate() const {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (dimension != 1 && dimension != 2)
    throw std::invalid_argument("dimension must be 1 or 2");
  if (is_adversarial(scenario)) {
    if (dimension != 1)
      throw std::invalid_argument("adversarial scenarios are 1D only");
    if (!(gamma > 0.0 && gamma < 0.5))
      throw std::invalid_argument("adversary probability must satisfy 0 < gamma < 0.5");
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    policy.validate();
  }
  if (is_grid(scenario) && dimension == 2) {
    auto k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (k * k != n)
      throw std::invalid_argument("2D grid scenarios need a perfect-square n");
  }
  if (is_partial(scenario) && !(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0,1)");
  if (!(m >= 0.0)) throw std::invalid_argument("m must be non-negative");
  if (!(r >= 0.0)) throw std::invalid_argument("r must be non-negative");
  if (!(d >= 0.0)) throw std::invalid_argument("d must be non-negative");
}

double ExperimentSpec::resolved_c_n() const {
  return c_n > 0.0 ? c_n : std::log(static_cast<double>(n));
}

double ExperimentSpec::resolved_alpha1() const {
  return alpha1 > 0.0 ? alpha1 : (alpha + 1.0) / 2.0;
}

double ExperimentSpec::resolved_r() const {
  if (r > 0.0) return r;
  double nd = static_cast<double>(n);
  switch (scenario) {
    case Scenario::GridFull:
    case Scenario::GridPartial:
      return dimension == 1 ? grid_radius(nd, a) : grid_radius_2d(nd);
    case Scenario::RandomFull:
      return dimension == 1 ? random_full_r(nd, resolved_c_n())
                            : random_full_r_2d(nd, resolved_c_n());
    case Scenario::RandomPartial:
      return dimension == 1
                 ? random_partial_r_sufficient(nd, resolved_alpha1(), beta)
                 : random_partial_r_sufficient_2d(nd, resolved_alpha1(), beta, a);
    case Scenario::AdversarialFull:
    case Scenario::AdversarialPartial:
      return 1.0 / (2.0 * nd);
    case Scenario::MinSpacing:
    case Scenario::Coupon:
      return 0.0;
  }
  return 0.0;
}

double ExperimentSpec::resolved_m() const {
  if (sensor_rule == SensorRule::Explicit) return m;
  double nd = static_cast<double>(n);
  if (is_grid(scenario)) {
    GridParams p{nd, a, alpha, beta, c};
    switch (sensor_rule) {
      case SensorRule::FullSufficient:
        return dimension == 1 ? grid_full_m(p, Sign::Plus)
                              : grid_full_m_2d(nd, c, Sign::Plus);
      case SensorRule::FullNecessary:
        return dimension == 1 ? grid_full_m(p, Sign::Minus)
                              : grid_full_m_2d(nd, c, Sign::Minus);
      case SensorRule::PartialSufficient:
        return dimension == 1 ? grid_partial_m_sufficient(p)
                              : grid_partial_m_2d_sufficient(nd, alpha, beta);
      case SensorRule::PartialNecessary:
        return dimension == 1 ? grid_partial_m_necessary(p)
                              : grid_partial_m_2d_necessary(nd, alpha, beta);
      default: break;
    }
  }
  if (is_random(scenario)) {
    switch (sensor_rule) {
      case SensorRule::FullSufficient:
        return dimension == 1 ? random_full_m(nd, resolved_c_n(), c, Sign::Plus)
                              : random_full_m_2d(nd, resolved_c_n(), c, Sign::Plus);
      case SensorRule::FullNecessary:
        return dimension == 1 ? random_full_m(nd, resolved_c_n(), c, Sign::Minus)
                              : random_full_m_2d(nd, resolved_c_n(), c, Sign::Minus);
      case SensorRule::PartialSufficient:
        return dimension == 1 ? random_partial_m_sufficient(to_random_params(*this))
                              : random_partial_m_sufficient_2d(to_random_params(*this));
      case SensorRule::PartialNecessary:
        return dimension == 1 ? random_partial_m_necessary(to_random_params(*this))
                              : random_partial_m_necessary_2d(to_random_params(*this));
      default: break;
    }
  }
  if (is_adversarial(scenario)) {
    double nd2 = static_cast<double>(n);
    if (sensor_rule == SensorRule::FullSufficient)
      return adversarial_full_m(nd2, gamma, eps);
    if (sensor_rule == SensorRule::PartialSufficient)
      return adversarial_partial_m(nd2, gamma, eps, alpha, beta);
    throw std::invalid_argument("adversarial scenarios have no necessary-count preset");
  }
  if (scenario == Scenario::Coupon) {
    if (sensor_rule == SensorRule::FullSufficient)
      return nd * (std::log(nd) + c);
    if (sensor_rule == SensorRule::FullNecessary)
      return nd * (std::log(nd) - c);
    throw std::invalid_argument("coupon scenario presets are full-sufficient/full-necessary");
  }
  throw std::invalid_argument("scenario has no sensor-count preset");
}

double ExperimentSpec::resolved_d() const {
  if (d > 0.0) return d;
  double nd = static_cast<double>(n);
  return 1.0 / (nd * nd * std::log(nd));
}

std::uint64_t ExperimentSpec::sensor_count() const {
  double v = std::ceil(resolved_m());
  return v <= 0.0 ? 0 : static_cast<std::uint64_t>(v);
}

std::pair<double, double> wilson_interval(std::uint64_t successes,
                                          std::uint64_t trials, double z) {
  if (trials < 1) throw std::invalid_argument("trials must be at least 1");
  if (successes > trials)
    throw std::invalid_argument("successes cannot exceed trials");
  if (!(z > 0.0)) throw std::invalid_argument("z must be positive");
  double n = static_cast<double>(trials);
  double p = static_cast<double>(successes) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2.0 * n)) / denom;
  double half = (z / denom) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

unsigned thread_budget(unsigned requested) {
  unsigned base = requested;
  if (base == 0) {
    base = std::thread::hardware_concurrency();
    if (base == 0) base = 1;
  }
  if (const char* env = std::getenv("SEPSIM_THREADS")) {
    char* end = nullptr;
    unsigned long cap = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1)
      base = std::min<unsigned long>(base, cap);
  }
  return base < 1 ? 1 : base;
}

namespace {

AdversarialTrialOutcome adversarial_outcome(const ExperimentSpec& spec,
                                            SplitMix64& rng) {
  Region region = Region::interval();
  TargetLayout layout = grid_layout(spec.n, region);
  AdversarialTrialOutcome out;
  out.truth.occupied.resize(spec.n);
  for (auto& bit : out.truth.occupied) bit = rng.next_bernoulli(0.5) ? 1 : 0;
  AdversaryModel model{spec.gamma, spec.policy};
  SensorField field = deploy_adversarial_field(spec.resolved_m(), region,
                                               spec.resolved_r(), model, rng);
  auto reports = reported_observations(field, layout, out.truth, spec.policy, rng);
  CoverageMap map = coverage_map(layout, field);
  out.verdicts = majority_decode(reports, map);
  out.q_margin = unique_coverage_margin(map, field);
  for (std::size_t t = 0; t < spec.n; ++t) {
    Verdict v = out.verdicts.verdict[t];
    if (v == Verdict::Unknown) continue;
    bool occupied = out.truth.occupied[t] != 0;
    if ((v == Verdict::Occupied) == occupied) ++out.num_correct;
  }
  return out;
}

bool separability_trial(const ExperimentSpec& spec, SplitMix64& rng) {
  Region region = spec.dimension == 1 ? Region::interval() : Region::square(spec.boundary);
  TargetLayout layout =
      is_grid(spec.scenario)
          ? grid_layout(spec.n, region)
          : make_layout(region, sample_uniform_points(spec.n, region, rng),
                        LayoutModel::Uniform);
  SensorField field;
  field.positions = sample_uniform_points(spec.sensor_count(), region, rng);
  field.radius = spec.resolved_r();
  SeparabilityReport rep = analyze(layout, field);
  if (is_partial(spec.scenario))
    return rep.num_identifiable >= partial_threshold(spec.alpha, spec.n);
  return rep.fully_separable;
}

bool min_spacing_trial(const ExperimentSpec& spec, SplitMix64& rng) {
  Region region = Region::interval();
  TargetLayout layout = make_layout(
      region, sample_uniform_points(spec.n, region, rng), LayoutModel::Uniform);
  std::vector<double> v = spacings(layout);
  double threshold = spec.resolved_d();
  // The event of the closed form: spacings V_2..V_n all exceed d (V_1, the
  // gap to the left boundary, is not part of it).
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > threshold)) return false;
  return true;
}

bool coupon_trial(const ExperimentSpec& spec, SplitMix64& rng) {
  std::uint64_t draws = spec.sensor_count();
  std::vector<std::uint8_t> seen(spec.n, 0);
  std::size_t distinct = 0;
  for (std::uint64_t i = 0; i < draws; ++i) {
    std::uint64_t cell = rng.next_below(spec.n);
    if (!seen[cell]) {
      seen[cell] = 1;
      if (++distinct == spec.n) return true;
    }
  }
  return distinct == spec.n;
}

}  // namespace

AdversarialTrialOutcome run_adversarial_trial(const ExperimentSpec& spec,
                                              std::uint64_t trial_index) {
  spec.validate();
  if (!is_adversarial(spec.scenario))
    throw std::invalid_argument("spec scenario is not adversarial");
  SplitMix64 rng(substream_seed(spec.master_seed, trial_index));
  return adversarial_outcome(spec, rng);
}

bool run_trial(const ExperimentSpec& spec, std::uint64_t trial_index) {
  spec.validate();
  SplitMix64 rng(substream_seed(spec.master_seed, trial_index));
  switch (spec.scenario) {
    case Scenario::GridFull:
    case Scenario::GridPartial:
    case Scenario::RandomFull:
    case Scenario::RandomPartial:
      return separability_trial(spec, rng);
    case Scenario::AdversarialFull: {
      AdversarialTrialOutcome out = adversarial_outcome(spec, rng);
      return out.num_correct == spec.n;
    }
    case Scenario::AdversarialPartial: {
      AdversarialTrialOutcome out = adversarial_outcome(spec, rng);
      return out.num_correct >= partial_threshold(spec.alpha, spec.n);
    }
    case Scenario::MinSpacing:
      return min_spacing_trial(spec, rng);
    case Scenario::Coupon:
      return coupon_trial(spec, rng);
  }
  throw std::invalid_argument("unknown scenario");
}

namespace {

double primary_param(const ExperimentSpec& spec) {
  if (spec.scenario == Scenario::MinSpacing) return spec.resolved_d();
  return spec.resolved_m();
}

}  // namespace

EstimateRow estimate(const ExperimentSpec& spec, unsigned threads) {
  spec.validate();
  EstimateRow row;
  // Resolve derived parameters up front so domain errors surface on the
  // calling thread.
  row.param = primary_param(spec);
  if (spec.scenario != Scenario::MinSpacing && spec.scenario != Scenario::Coupon)
    (void)spec.resolved_r();

  auto start = std::chrono::steady_clock::now();
  std::uint64_t total = spec.trials;
  auto workers = static_cast<std::uint64_t>(thread_budget(threads));
  if (workers > total) workers = total;

  std::uint64_t successes = 0;
  if (workers <= 1) {
    for (std::uint64_t i = 0; i < total; ++i)
      if (run_trial(spec, i)) ++successes;
  } else {
    std::vector<std::uint64_t> partial(workers, 0);
    std::vector<std::exception_ptr> failure(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        std::uint64_t lo = total * w / workers;
        std::uint64_t hi = total * (w + 1) / workers;
        std::uint64_t count = 0;
        try {
          for (std::uint64_t i = lo; i < hi; ++i)
            if (run_trial(spec, i)) ++count;
        } catch (...) {
          failure[w] = std::current_exception();
        }
        partial[w] = count;
      });
    }
    for (auto& t : pool) t.join();
    for (auto& f : failure)
      if (f) std::rethrow_exception(f);
    // Fixed-order integer sum: identical totals for every thread schedule.
    for (std::uint64_t c : partial) successes += c;
  }

  row.successes = successes;
  row.trials = total;
  row.estimate = static_cast<double>(successes) / static_cast<double>(total);
  auto [lo, hi] = wilson_interval(successes, total, kZ95);
  row.ci_low = lo;
  row.ci_high = hi;
  if (spec.collect_timing) {
    auto end = std::chrono::steady_clock::now();
    row.wall_time_ms =
        std::chrono::duration<double, std::milli>(end - start).count();
  }
  return row;
}

namespace {

void set_axis(ExperimentSpec& spec, std::string_view axis, double value) {
  auto as_count = [&](const char* name) {
    double rounded = std::nearbyint(value);
    if (!(rounded >= 1.0) || std::abs(value - rounded) > 1e-6)
      throw std::invalid_argument(std::string("axis ") + name +
                                  " requires positive integer values");
    return static_cast<std::uint64_t>(rounded);
  };
  if (axis == "n") spec.n = as_count("n");
  else if (axis == "trials") spec.trials = as_count("trials");
  else if (axis == "m") { spec.m = value; spec.sensor_rule = SensorRule::Explicit; }
  else if (axis == "r") spec.r = value;
  else if (axis == "a") spec.a = value;
  else if (axis == "c_n") spec.c_n = value;
  else if (axis == "c") spec.c = value;
  else if (axis == "alpha") spec.alpha = value;
  else if (axis == "beta") spec.beta = value;
  else if (axis == "alpha1") spec.alpha1 = value;
  else if (axis == "theta1") spec.theta1 = value;
  else if (axis == "theta2") spec.theta2 = value;
  else if (axis == "gamma") spec.gamma = value;
  else if (axis == "eps") spec.eps = value;
  else if (axis == "d") spec.d = value;
  else
    throw std::invalid_argument("unknown sweep axis: " + std::string(axis));
}

}  // namespace

std::vector<EstimateRow> sweep(const ExperimentSpec& spec, std::string_view axis,
                               std::span<const double> values,
                               unsigned threads) {
  // Validate the axis name even for empty sweeps.
  {
    ExperimentSpec probe = spec;
    set_axis(probe, axis, axis == "n" || axis == "trials" ? 1.0 : 0.5);
  }
  std::vector<EstimateRow> rows;
  rows.reserve(values.size());
  for (double value : values) {
    ExperimentSpec point = spec;
    set_axis(point, axis, value);
    EstimateRow row = estimate(point, threads);
    row.param = value;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace sepsim
