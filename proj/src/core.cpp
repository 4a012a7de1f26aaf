#include "sepsim/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sepsim {

bool Region::contains(const Point& p) const noexcept {
  if (p.x < 0.0 || p.x > 1.0) return false;
  if (dimension == 1) return true;
  return p.y >= 0.0 && p.y <= 1.0;
}

double Region::distance(const Point& a, const Point& b) const noexcept {
  if (dimension == 1) return std::abs(a.x - b.x);
  double dx = std::abs(a.x - b.x);
  double dy = std::abs(a.y - b.y);
  if (boundary == BoundaryMode::Torus) {
    if (dx > 0.5) dx = 1.0 - dx;
    if (dy > 0.5) dy = 1.0 - dy;
  }
  return std::sqrt(dx * dx + dy * dy);
}

TargetConfiguration TargetConfiguration::from_mask(std::size_t n,
                                                   std::uint64_t mask) {
  if (n > 64) throw std::invalid_argument("from_mask supports at most 64 targets");
  TargetConfiguration c;
  c.occupied.resize(n);
  for (std::size_t i = 0; i < n; ++i) c.occupied[i] = (mask >> i) & 1u;
  return c;
}

namespace {

void check_region(const Region& region) {
  if (region.dimension != 1 && region.dimension != 2)
    throw std::invalid_argument("region dimension must be 1 or 2");
}

std::size_t isqrt_exact(std::size_t n) {
  auto k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (k * k != n)
    throw std::invalid_argument("2D grid layout needs a perfect-square target count, got " +
                                std::to_string(n));
  return k;
}

}  // namespace

TargetLayout grid_layout(std::size_t n, const Region& region) {
  check_region(region);
  if (n == 0) throw std::invalid_argument("target count must be positive");
  TargetLayout layout;
  layout.region = region;
  layout.model = LayoutModel::Grid;
  layout.positions.reserve(n);
  if (region.dimension == 1) {
    for (std::size_t i = 1; i <= n; ++i)
      layout.positions.push_back({static_cast<double>(2 * i - 1) / (2.0 * static_cast<double>(n)), 0.0});
  } else {
    std::size_t k = isqrt_exact(n);
    double denom = 2.0 * static_cast<double>(k);
    for (std::size_t row = 1; row <= k; ++row)
      for (std::size_t col = 1; col <= k; ++col)
        layout.positions.push_back({static_cast<double>(2 * col - 1) / denom,
                                    static_cast<double>(2 * row - 1) / denom});
  }
  return layout;
}

TargetLayout make_layout(const Region& region, std::vector<Point> positions,
                         LayoutModel model) {
  check_region(region);
  for (const Point& p : positions)
    if (!region.contains(p))
      throw std::invalid_argument("target position outside the region");
  if (region.dimension == 1)
    std::sort(positions.begin(), positions.end(),
              [](const Point& a, const Point& b) { return a.x < b.x; });
  return {region, std::move(positions), model};
}

std::vector<Point> sample_uniform_points(std::size_t count,
                                         const Region& region,
                                         SplitMix64& rng) {
  check_region(region);
  std::vector<Point> pts;
  pts.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Point p;
    p.x = rng.next_unit();
    if (region.dimension == 2) p.y = rng.next_unit();
    pts.push_back(p);
  }
  if (region.dimension == 1)
    std::sort(pts.begin(), pts.end(),
              [](const Point& a, const Point& b) { return a.x < b.x; });
  return pts;
}

std::vector<Point> sample_uniform_points(std::size_t count,
                                         const Region& region,
                                         std::uint64_t seed) {
  SplitMix64 rng(seed);
  return sample_uniform_points(count, region, rng);
}

std::vector<Point> sample_poisson_points(double intensity,
                                         const Region& region,
                                         SplitMix64& rng) {
  if (!(intensity > 0.0) || !std::isfinite(intensity))
    throw std::invalid_argument("Poisson intensity must be finite and positive");
  std::uint64_t count = rng.next_poisson(intensity);
  return sample_uniform_points(count, region, rng);
}

std::vector<Point> sample_poisson_points(double intensity,
                                         const Region& region,
                                         std::uint64_t seed) {
  SplitMix64 rng(seed);
  return sample_poisson_points(intensity, region, rng);
}

int sense(const Point& sensor, double radius, const TargetLayout& layout,
          const TargetConfiguration& config) {
  if (config.occupied.size() != layout.n())
    throw std::invalid_argument("configuration size does not match layout");
  if (!(radius > 0.0))
    throw std::invalid_argument("sensing radius must be positive");
  for (std::size_t i = 0; i < layout.n(); ++i)
    if (config.occupied[i] &&
        layout.region.covers(sensor, layout.positions[i], radius))
      return 1;
  return 0;
}

std::vector<std::uint8_t> observation_vector(const SensorField& field,
                                             const TargetLayout& layout,
                                             const TargetConfiguration& config) {
  std::vector<std::uint8_t> obs;
  obs.reserve(field.size());
  for (const Point& s : field.positions)
    obs.push_back(static_cast<std::uint8_t>(sense(s, field.radius, layout, config)));
  return obs;
}

}  // namespace sepsim
