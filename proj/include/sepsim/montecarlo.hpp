#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "sepsim/adversarial.hpp"
#include "sepsim/core.hpp"
#include "sepsim/separability.hpp"

namespace sepsim {

enum class Scenario {
  GridFull,
  GridPartial,
  RandomFull,
  RandomPartial,
  AdversarialFull,
  AdversarialPartial,
  MinSpacing,
  Coupon,
};

/// How the sensor count is chosen when m is not given explicitly: the
/// matching closed-form threshold for the scenario (ceilinged to a count at
/// sampling time).
enum class SensorRule {
  Explicit,
  FullSufficient,
  FullNecessary,
  PartialSufficient,
  PartialNecessary,
};

/// One declarative experiment. Fields are read per scenario; radius and
/// sensor count fall back to the scenario presets when left at 0 /
/// SensorRule values other than Explicit.
struct ExperimentSpec {
  Scenario scenario = Scenario::GridFull;
  int dimension = 1;
  BoundaryMode boundary = BoundaryMode::Clip;
  std::size_t n = 1;

  double r = 0.0;  // 0 = scenario preset radius
  SensorRule sensor_rule = SensorRule::Explicit;
  double m = 0.0;  // sensor count / Poisson intensity / coupon draws

  double a = 1.0;       // grid radius scale; random-partial constant (> 1 there)
  double c_n = 0.0;     // 0 = ln n
  double c = 3.0;       // additive divergence surrogate (c, f_n, g_n)
  double alpha = 0.9;   // partial-separability target fraction
  double beta = 0.9;
  double alpha1 = 0.0;  // 0 = (alpha + 1)/2
  double theta1 = 0.5;
  double theta2 = 0.5;

  double gamma = 0.2;  // adversarial scenarios
  double eps = 0.5;
  AdversaryPolicy policy;

  double d = 0.0;  // min-spacing threshold; 0 = 1/(n^2 ln n)

  std::uint64_t trials = 400;
  std::uint64_t master_seed = 0;
  bool collect_timing = false;

  void validate() const;
  double resolved_c_n() const;
  double resolved_alpha1() const;
  double resolved_r() const;
  double resolved_m() const;
  double resolved_d() const;
  std::uint64_t sensor_count() const;  // ceil(resolved_m())
};

/// successes/trials with a Wilson score interval.
struct EstimateRow {
  double param = 0.0;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
  double estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double wall_time_ms = 0.0;
};

inline constexpr double kZ95 = 1.959963984540054;
inline constexpr double kZ99 = 2.5758293035489004;

std::pair<double, double> wilson_interval(std::uint64_t successes,
                                          std::uint64_t trials, double z);

/// Number of worker threads estimate() will use: requested if nonzero, else
/// hardware concurrency, in both cases capped by env SEPSIM_THREADS.
unsigned thread_budget(unsigned requested);

/// One sampled instance of the spec's scenario; deterministic given
/// (master_seed, trial_index) and independent of any other trial.
bool run_trial(const ExperimentSpec& spec, std::uint64_t trial_index);

/// Everything one adversarial trial produced, for callers that need more than
/// the success bit.
struct AdversarialTrialOutcome {
  TargetConfiguration truth;
  MajorityVerdicts verdicts;
  std::vector<std::int64_t> q_margin;  // good minus adversarial unique coverers
  std::size_t num_correct = 0;
};

AdversarialTrialOutcome run_adversarial_trial(const ExperimentSpec& spec,
                                              std::uint64_t trial_index);

/// Aggregates run_trial over indices 0..trials-1. Trials may run on several
/// threads; the count is a plain integer sum, so the result is identical for
/// every schedule. param is the spec's resolved primary parameter (m, or d
/// for min-spacing).
EstimateRow estimate(const ExperimentSpec& spec, unsigned threads = 0);

/// One estimate per value, with the named spec field set to that value.
/// Axis names: n, m, r, a, c_n, c, alpha, beta, alpha1, theta1, theta2,
/// gamma, eps, d, trials.
std::vector<EstimateRow> sweep(const ExperimentSpec& spec, std::string_view axis,
                               std::span<const double> values,
                               unsigned threads = 0);

}  // namespace sepsim
