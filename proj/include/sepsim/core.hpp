#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sepsim/rng.hpp"

namespace sepsim {

struct Point {
  double x = 0.0;
  double y = 0.0;  // unused in 1D
};

enum class BoundaryMode { Clip, Torus };

/// Domain the targets and sensors live in: the unit interval (dimension 1) or
/// the unit square (dimension 2). The boundary mode only changes the metric,
/// and only in 2D: Torus wraps both axes, Clip does not.
struct Region {
  int dimension = 1;
  BoundaryMode boundary = BoundaryMode::Clip;

  static Region interval() { return {1, BoundaryMode::Clip}; }
  static Region square(BoundaryMode b = BoundaryMode::Clip) { return {2, b}; }

  bool contains(const Point& p) const noexcept;
  double distance(const Point& a, const Point& b) const noexcept;

  /// Open-ball membership: distance(a, b) < r, strict. This is the one
  /// sensing predicate; every coverage path goes through it so alternative
  /// strategies cannot disagree on boundary cases. 2D compares squared
  /// distances to avoid the sqrt.
  bool covers(const Point& a, const Point& b, double r) const noexcept {
    if (dimension == 1) {
      double d = a.x - b.x;
      return (d < 0 ? -d : d) < r;
    }
    double dx = a.x - b.x;
    if (dx < 0) dx = -dx;
    double dy = a.y - b.y;
    if (dy < 0) dy = -dy;
    if (boundary == BoundaryMode::Torus) {
      if (dx > 0.5) dx = 1.0 - dx;
      if (dy > 0.5) dy = 1.0 - dy;
    }
    return dx * dx + dy * dy < r * r;
  }
};

enum class LayoutModel { Grid, Uniform, Poisson };

/// Fixed target locations. 1D layouts are kept sorted ascending by x, so
/// spacings can be read off adjacent entries.
struct TargetLayout {
  Region region;
  std::vector<Point> positions;
  LayoutModel model = LayoutModel::Grid;

  std::size_t n() const noexcept { return positions.size(); }
};

/// Occupancy mask over a layout's targets (1 = target present).
struct TargetConfiguration {
  std::vector<std::uint8_t> occupied;

  static TargetConfiguration all_occupied(std::size_t n) {
    return {std::vector<std::uint8_t>(n, 1)};
  }
  static TargetConfiguration from_mask(std::size_t n, std::uint64_t mask);
};

/// Sensor positions with a shared sensing radius. The adversary flags are
/// carried here (empty vector = all sensors truthful) so that deployment and
/// reporting agree on which sensors lie.
struct SensorField {
  std::vector<Point> positions;
  double radius = 0.0;
  std::vector<std::uint8_t> adversary;

  std::size_t size() const noexcept { return positions.size(); }
  bool is_adversary(std::size_t i) const noexcept {
    return i < adversary.size() && adversary[i] != 0;
  }
};

/// n targets at cell midpoints: (2i-1)/2n in 1D; in 2D n must be a perfect
/// square and the targets sit at the midpoints of a sqrt(n) x sqrt(n) grid of
/// cells, row-major.
TargetLayout grid_layout(std::size_t n, const Region& region);

/// Layout from explicit positions (validated against the region); 1D
/// positions are sorted on construction.
TargetLayout make_layout(const Region& region, std::vector<Point> positions,
                         LayoutModel model);

/// `count` i.i.d. uniform points; sorted ascending when the region is 1D.
std::vector<Point> sample_uniform_points(std::size_t count,
                                         const Region& region,
                                         SplitMix64& rng);
std::vector<Point> sample_uniform_points(std::size_t count,
                                         const Region& region,
                                         std::uint64_t seed);

/// Homogeneous Poisson point process: count ~ Poisson(intensity), then that
/// many uniform positions (the region has unit measure).
std::vector<Point> sample_poisson_points(double intensity,
                                         const Region& region,
                                         SplitMix64& rng);
std::vector<Point> sample_poisson_points(double intensity,
                                         const Region& region,
                                         std::uint64_t seed);

/// Truthful reading of one sensor: 1 iff some occupied target lies strictly
/// within radius.
int sense(const Point& sensor, double radius, const TargetLayout& layout,
          const TargetConfiguration& config);

/// Truthful readings of every sensor in the field, in field order.
std::vector<std::uint8_t> observation_vector(const SensorField& field,
                                             const TargetLayout& layout,
                                             const TargetConfiguration& config);

}  // namespace sepsim
