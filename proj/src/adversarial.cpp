#include "sepsim/adversarial.hpp"

#include <cmath>
#include <stdexcept>

namespace sepsim {

void AdversaryPolicy::validate() const {
  if (kind == PolicyKind::RandomBit && !(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("RandomBit probability must lie in [0,1]");
}

void AdversaryModel::validate() const {
  if (!(gamma > 0.0 && gamma < 0.5))
    throw std::invalid_argument("adversary probability must satisfy 0 < gamma < 0.5");
  policy.validate();
}

SensorField deploy_adversarial_field(double intensity, const Region& region,
                                     double radius, const AdversaryModel& model,
                                     SplitMix64& rng) {
  if (!(intensity > 0.0))
    throw std::invalid_argument("Poisson intensity must be positive");
  if (!(radius > 0.0))
    throw std::invalid_argument("sensing radius must be positive");
  model.validate();
  SensorField field;
  field.positions = sample_poisson_points(intensity, region, rng);
  field.radius = radius;
  field.adversary.resize(field.positions.size());
  for (auto& flag : field.adversary)
    flag = rng.next_bernoulli(model.gamma) ? 1 : 0;
  return field;
}

SensorField deploy_adversarial_field(double intensity, const Region& region,
                                     double radius, const AdversaryModel& model,
                                     std::uint64_t seed) {
  SplitMix64 rng(seed);
  return deploy_adversarial_field(intensity, region, radius, model, rng);
}

std::vector<std::uint8_t> reported_observations(const SensorField& field,
                                                const TargetLayout& layout,
                                                const TargetConfiguration& config,
                                                const AdversaryPolicy& policy,
                                                SplitMix64& rng) {
  policy.validate();
  std::vector<std::uint8_t> reports;
  reports.reserve(field.size());
  for (std::size_t s = 0; s < field.size(); ++s) {
    auto bit = static_cast<std::uint8_t>(
        sense(field.positions[s], field.radius, layout, config));
    if (field.is_adversary(s)) {
      switch (policy.kind) {
        case PolicyKind::Flip: bit = bit ? 0 : 1; break;
        case PolicyKind::RandomBit: bit = rng.next_bernoulli(policy.p) ? 1 : 0; break;
        case PolicyKind::ConstantOne: bit = 1; break;
        case PolicyKind::ConstantZero: bit = 0; break;
      }
    }
    reports.push_back(bit);
  }
  return reports;
}

std::vector<std::uint8_t> reported_observations(const SensorField& field,
                                                const TargetLayout& layout,
                                                const TargetConfiguration& config,
                                                const AdversaryPolicy& policy,
                                                std::uint64_t seed) {
  SplitMix64 rng(seed);
  return reported_observations(field, layout, config, policy, rng);
}

MajorityVerdicts majority_decode(const std::vector<std::uint8_t>& reports,
                                 const CoverageMap& map) {
  if (reports.size() != map.per_sensor_targets.size())
    throw std::invalid_argument("report count does not match sensor count");
  MajorityVerdicts out;
  out.verdict.resize(map.n_targets, Verdict::Unknown);
  out.vote_margin.resize(map.n_targets, 0);
  for (std::size_t t = 0; t < map.n_targets; ++t) {
    std::int64_t margin = 0;
    for (std::uint32_t s : map.per_target_unique_sensors[t])
      margin += reports[s] ? 1 : -1;
    out.vote_margin[t] = margin;
    if (margin > 0)
      out.verdict[t] = Verdict::Occupied;
    else if (margin < 0)
      out.verdict[t] = Verdict::Empty;
  }
  return out;
}

std::vector<std::int64_t> unique_coverage_margin(const CoverageMap& map,
                                                 const SensorField& field) {
  if (field.size() != map.per_sensor_targets.size())
    throw std::invalid_argument("field size does not match coverage map");
  std::vector<std::int64_t> q(map.n_targets, 0);
  for (std::size_t t = 0; t < map.n_targets; ++t)
    for (std::uint32_t s : map.per_target_unique_sensors[t])
      q[t] += field.is_adversary(s) ? -1 : 1;
  return q;
}

double chernoff_success_bound(double gamma, double lambda) {
  if (!(gamma > 0.0 && gamma < 0.5))
    throw std::invalid_argument("adversary probability must satisfy 0 < gamma < 0.5");
  if (!(lambda > 0.0))
    throw std::invalid_argument("lambda must be positive");
  double rate = 1.0 - 2.0 * std::sqrt(gamma * (1.0 - gamma));
  return 1.0 - std::exp(-rate * lambda);
}

namespace {
double adversarial_rate(double n, double gamma, double eps) {
  if (!(n > 0.0)) throw std::invalid_argument("n must be positive");
  if (!(gamma > 0.0 && gamma < 0.5))
    throw std::invalid_argument("adversary probability must satisfy 0 < gamma < 0.5");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  return (1.0 + eps) / (1.0 - 2.0 * std::sqrt(gamma * (1.0 - gamma)));
}
}  // namespace

double adversarial_full_m(double n, double gamma, double eps) {
  return adversarial_rate(n, gamma, eps) * n * std::log(n);
}

double adversarial_partial_m(double n, double gamma, double eps, double alpha,
                             double beta) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0,1)");
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("beta must lie in (0,1)");
  return adversarial_rate(n, gamma, eps) * n *
         std::log(1.0 / ((1.0 - alpha) * (1.0 - beta)));
}

}  // namespace sepsim
