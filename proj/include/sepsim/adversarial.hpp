#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sepsim/core.hpp"
#include "sepsim/separability.hpp"

namespace sepsim {

/// What an adversarial sensor reports given its true reading. Policies are
/// oblivious: they see only the sensor's own bit.
enum class PolicyKind { Flip, RandomBit, ConstantOne, ConstantZero };

struct AdversaryPolicy {
  PolicyKind kind = PolicyKind::Flip;
  double p = 0.5;  // RandomBit only: probability of reporting 1

  void validate() const;
};

struct AdversaryModel {
  double gamma = 0.25;  // adversary probability, must lie in (0, 0.5)
  AdversaryPolicy policy;

  void validate() const;
};

/// Poisson(intensity) sensors, uniform positions, each independently marked
/// adversarial with probability gamma. Good and adversarial sensors then form
/// independent Poisson processes of intensities (1-gamma)m and gamma*m.
SensorField deploy_adversarial_field(double intensity, const Region& region,
                                     double radius, const AdversaryModel& model,
                                     SplitMix64& rng);
SensorField deploy_adversarial_field(double intensity, const Region& region,
                                     double radius, const AdversaryModel& model,
                                     std::uint64_t seed);

/// Truthful readings for good sensors; the policy applied to the true reading
/// for adversarial ones. Only RandomBit consumes randomness (one draw per
/// adversarial sensor, in field order).
std::vector<std::uint8_t> reported_observations(const SensorField& field,
                                                const TargetLayout& layout,
                                                const TargetConfiguration& config,
                                                const AdversaryPolicy& policy,
                                                SplitMix64& rng);
std::vector<std::uint8_t> reported_observations(const SensorField& field,
                                                const TargetLayout& layout,
                                                const TargetConfiguration& config,
                                                const AdversaryPolicy& policy,
                                                std::uint64_t seed);

/// Per-target vote over unique coverers: strict majority of 1s -> Occupied,
/// of 0s -> Empty; tie or no unique coverer -> Unknown. vote_margin is
/// (#ones - #zeros) among the unique coverers.
struct MajorityVerdicts {
  std::vector<Verdict> verdict;
  std::vector<std::int64_t> vote_margin;
};

MajorityVerdicts majority_decode(const std::vector<std::uint8_t>& reports,
                                 const CoverageMap& map);

/// Q_i = (good unique coverers) - (adversarial unique coverers) per target,
/// from ground-truth adversary flags. Under the Flip policy the majority
/// verdict for target i is correct exactly when Q_i > 0.
std::vector<std::int64_t> unique_coverage_margin(const CoverageMap& map,
                                                 const SensorField& field);

/// Lower bound on per-target majority success at unique-coverage rate lambda:
/// 1 - exp(-(1 - 2*sqrt(gamma*(1-gamma))) * lambda).
double chernoff_success_bound(double gamma, double lambda);

/// Poisson intensities (with r = 1/2n) that make majority decoding of all /
/// of alpha*n targets succeed with high probability.
double adversarial_full_m(double n, double gamma, double eps);
double adversarial_partial_m(double n, double gamma, double eps, double alpha,
                             double beta);

}  // namespace sepsim
