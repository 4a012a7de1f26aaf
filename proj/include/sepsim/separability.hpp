#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sepsim/core.hpp"

namespace sepsim {

/// How coverage_map finds the targets each sensor covers. Auto picks Indexed
/// once the brute-force product m*n gets large; both strategies evaluate the
/// same predicate on the same candidates-or-superset, so their outputs are
/// identical, not just statistically close.
enum class CoverageStrategy { Auto, BruteForce, Indexed };

/// Who covers whom. per_sensor_targets[s] lists the targets sensor s covers
/// (ascending); per_target_unique_sensors[t] lists the sensors covering
/// target t and nothing else.
struct CoverageMap {
  std::size_t n_targets = 0;
  std::vector<std::vector<std::uint32_t>> per_sensor_targets;
  std::vector<std::vector<std::uint32_t>> per_target_unique_sensors;
};

CoverageMap coverage_map(const TargetLayout& layout, const SensorField& field,
                         CoverageStrategy strategy = CoverageStrategy::Auto);

/// Per-target identifiability: target t is identifiable iff some sensor
/// covers t and no other target.
struct SeparabilityReport {
  std::vector<std::uint8_t> identifiable;
  std::vector<std::uint32_t> unique_count;  // sensors covering only this target
  std::size_t num_identifiable = 0;
  bool fully_separable = false;
};

SeparabilityReport report_from_coverage(const CoverageMap& map);
SeparabilityReport analyze(const TargetLayout& layout, const SensorField& field,
                           CoverageStrategy strategy = CoverageStrategy::Auto);

enum class Verdict : std::uint8_t { Empty = 0, Occupied = 1, Unknown = 2 };

struct DecodedConfiguration {
  std::vector<Verdict> verdict;
};

/// Recover occupancy from truthful observations: each target's uniquely
/// covering sensors all read the same bit (else IntegrityError, since no
/// configuration produces disagreeing truthful readings); targets with no
/// unique coverer decode to Unknown.
DecodedConfiguration decode_truthful(const std::vector<std::uint8_t>& observations,
                                     const CoverageMap& map);

/// Definition check, exponential in n (capped at n <= 16): true iff all 2^n
/// occupancy configurations yield pairwise distinct observation vectors.
bool brute_force_distinguishable(const TargetLayout& layout,
                                 const SensorField& field);

/// Spacings of a sorted 1D layout: V_1 = x_(1), V_i = x_(i) - x_(i-1). Length
/// n (the gap to the right boundary is not included).
std::vector<double> spacings(const TargetLayout& layout);

/// W_i = V_i + V_{i+1} for i = 2..n-1 (length n-2): the width of the interval
/// around each interior target in which a sensor covers it alone when
/// r = half the neighbour distance.
std::vector<double> adjacent_sums(const std::vector<double>& v);

}  // namespace sepsim
