#include "sepsim/separability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sepsim/errors.hpp"

namespace sepsim {

namespace {

constexpr std::size_t kAutoIndexThreshold = 1u << 16;

std::size_t bucket_of(double x, std::size_t buckets) {
  double b = std::floor(x * static_cast<double>(buckets));
  if (b < 0.0) return 0;
  auto i = static_cast<std::size_t>(b);
  return i >= buckets ? buckets - 1 : i;
}

// Bucket index over target ids, CSR layout. Buckets partition the region, so
// widening the scanned bucket range by one on each side gives a superset of
// any open ball's candidates; the exact predicate then filters.
struct BucketIndex {
  std::size_t bx = 1, by = 1;
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> ids;

  std::size_t cell(std::size_t cx, std::size_t cy) const { return cy * bx + cx; }
};

BucketIndex build_index(const TargetLayout& layout) {
  BucketIndex idx;
  std::size_t n = layout.n();
  if (layout.region.dimension == 1) {
    idx.bx = n > 0 ? n : 1;
    idx.by = 1;
  } else {
    auto side = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    idx.bx = idx.by = side > 0 ? side : 1;
  }
  std::size_t cells = idx.bx * idx.by;
  std::vector<std::uint32_t> count(cells, 0);
  auto cell_of = [&](const Point& p) {
    std::size_t cx = bucket_of(p.x, idx.bx);
    std::size_t cy = layout.region.dimension == 2 ? bucket_of(p.y, idx.by) : 0;
    return idx.cell(cx, cy);
  };
  for (const Point& p : layout.positions) ++count[cell_of(p)];
  idx.offsets.assign(cells + 1, 0);
  for (std::size_t c = 0; c < cells; ++c) idx.offsets[c + 1] = idx.offsets[c] + count[c];
  idx.ids.resize(n);
  std::vector<std::uint32_t> cursor(idx.offsets.begin(), idx.offsets.end() - 1);
  for (std::size_t t = 0; t < n; ++t)
    idx.ids[cursor[cell_of(layout.positions[t])]++] = static_cast<std::uint32_t>(t);
  return idx;
}

// Cells whose union contains [x - r, x + r], plus a one-cell FP margin.
void axis_range(double x, double r, std::size_t buckets, bool wrap,
                std::vector<std::size_t>& out) {
  out.clear();
  double lo = std::floor((x - r) * static_cast<double>(buckets)) - 1.0;
  double hi = std::floor((x + r) * static_cast<double>(buckets)) + 1.0;
  if (hi - lo + 1.0 >= static_cast<double>(buckets)) {
    for (std::size_t c = 0; c < buckets; ++c) out.push_back(c);
    return;
  }
  auto lo_i = static_cast<long long>(lo);
  auto hi_i = static_cast<long long>(hi);
  for (long long c = lo_i; c <= hi_i; ++c) {
    long long cc = c;
    if (wrap) {
      cc %= static_cast<long long>(buckets);
      if (cc < 0) cc += static_cast<long long>(buckets);
    } else {
      if (cc < 0 || cc >= static_cast<long long>(buckets)) continue;
    }
    out.push_back(static_cast<std::size_t>(cc));
  }
}

}  // namespace

CoverageMap coverage_map(const TargetLayout& layout, const SensorField& field,
                         CoverageStrategy strategy) {
  if (!(field.radius > 0.0))
    throw std::invalid_argument("sensing radius must be positive");
  std::size_t n = layout.n();
  std::size_t m = field.size();
  if (strategy == CoverageStrategy::Auto)
    strategy = (m * n > kAutoIndexThreshold) ? CoverageStrategy::Indexed
                                             : CoverageStrategy::BruteForce;

  CoverageMap map;
  map.n_targets = n;
  map.per_sensor_targets.resize(m);
  map.per_target_unique_sensors.resize(n);
  const Region& region = layout.region;
  double r = field.radius;

  if (strategy == CoverageStrategy::BruteForce) {
    for (std::size_t s = 0; s < m; ++s) {
      auto& covered = map.per_sensor_targets[s];
      for (std::size_t t = 0; t < n; ++t)
        if (region.covers(field.positions[s], layout.positions[t], r))
          covered.push_back(static_cast<std::uint32_t>(t));
    }
  } else {
    BucketIndex idx = build_index(layout);
    bool wrap = region.dimension == 2 && region.boundary == BoundaryMode::Torus;
    std::vector<std::size_t> xs, ys;
    for (std::size_t s = 0; s < m; ++s) {
      const Point& p = field.positions[s];
      axis_range(p.x, r, idx.bx, wrap, xs);
      if (region.dimension == 2)
        axis_range(p.y, r, idx.by, wrap, ys);
      else
        ys.assign(1, 0);
      auto& covered = map.per_sensor_targets[s];
      for (std::size_t cy : ys)
        for (std::size_t cx : xs) {
          std::size_t c = idx.cell(cx, cy);
          for (std::uint32_t k = idx.offsets[c]; k < idx.offsets[c + 1]; ++k) {
            std::uint32_t t = idx.ids[k];
            if (region.covers(p, layout.positions[t], r)) covered.push_back(t);
          }
        }
      std::sort(covered.begin(), covered.end());
    }
  }

  for (std::size_t s = 0; s < m; ++s)
    if (map.per_sensor_targets[s].size() == 1)
      map.per_target_unique_sensors[map.per_sensor_targets[s][0]].push_back(
          static_cast<std::uint32_t>(s));
  return map;
}

SeparabilityReport report_from_coverage(const CoverageMap& map) {
  SeparabilityReport rep;
  rep.identifiable.resize(map.n_targets);
  rep.unique_count.resize(map.n_targets);
  for (std::size_t t = 0; t < map.n_targets; ++t) {
    rep.unique_count[t] = static_cast<std::uint32_t>(map.per_target_unique_sensors[t].size());
    rep.identifiable[t] = rep.unique_count[t] > 0 ? 1 : 0;
    rep.num_identifiable += rep.identifiable[t];
  }
  rep.fully_separable = rep.num_identifiable == map.n_targets;
  return rep;
}

SeparabilityReport analyze(const TargetLayout& layout, const SensorField& field,
                           CoverageStrategy strategy) {
  return report_from_coverage(coverage_map(layout, field, strategy));
}

DecodedConfiguration decode_truthful(const std::vector<std::uint8_t>& observations,
                                     const CoverageMap& map) {
  if (observations.size() != map.per_sensor_targets.size())
    throw std::invalid_argument("observation count does not match sensor count");
  DecodedConfiguration out;
  out.verdict.resize(map.n_targets, Verdict::Unknown);
  for (std::size_t t = 0; t < map.n_targets; ++t) {
    const auto& sensors = map.per_target_unique_sensors[t];
    if (sensors.empty()) continue;
    std::uint8_t bit = observations[sensors[0]];
    for (std::uint32_t s : sensors)
      if (observations[s] != bit)
        throw IntegrityError("unique coverers of one target disagree; observations are not truthful");
    out.verdict[t] = bit ? Verdict::Occupied : Verdict::Empty;
  }
  return out;
}

bool brute_force_distinguishable(const TargetLayout& layout,
                                 const SensorField& field) {
  std::size_t n = layout.n();
  if (n > 16)
    throw CapacityError("brute-force distinguishability is capped at 16 targets");
  if (!(field.radius > 0.0))
    throw std::invalid_argument("sensing radius must be positive");
  std::size_t m = field.size();

  std::vector<std::uint32_t> sensor_mask(m, 0);
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = 0; t < n; ++t)
      if (layout.region.covers(field.positions[s], layout.positions[t], field.radius))
        sensor_mask[s] |= 1u << t;

  std::size_t words = (m + 63) / 64;
  std::size_t configs = std::size_t{1} << n;
  std::vector<std::uint64_t> obs(configs * (words ? words : 1), 0);
  for (std::size_t c = 0; c < configs; ++c) {
    std::uint64_t* row = obs.data() + c * words;
    for (std::size_t s = 0; s < m; ++s)
      if (sensor_mask[s] & c) row[s / 64] |= std::uint64_t{1} << (s % 64);
  }

  std::vector<std::size_t> order(configs);
  for (std::size_t c = 0; c < configs; ++c) order[c] = c;
  auto row_less = [&](std::size_t a, std::size_t b) {
    const std::uint64_t* ra = obs.data() + a * words;
    const std::uint64_t* rb = obs.data() + b * words;
    for (std::size_t w = 0; w < words; ++w)
      if (ra[w] != rb[w]) return ra[w] < rb[w];
    return false;
  };
  std::sort(order.begin(), order.end(), row_less);
  for (std::size_t i = 1; i < configs; ++i)
    if (!row_less(order[i - 1], order[i])) return false;
  return true;
}

std::vector<double> spacings(const TargetLayout& layout) {
  if (layout.region.dimension != 1)
    throw std::invalid_argument("spacings are defined for 1D layouts only");
  std::vector<double> v;
  v.reserve(layout.n());
  double prev = 0.0;
  for (const Point& p : layout.positions) {
    if (p.x < prev) throw std::invalid_argument("layout positions are not sorted");
    v.push_back(p.x - prev);
    prev = p.x;
  }
  return v;
}

std::vector<double> adjacent_sums(const std::vector<double>& v) {
  if (v.size() < 3) return {};
  std::vector<double> w;
  w.reserve(v.size() - 2);
  for (std::size_t j = 1; j + 1 < v.size(); ++j) w.push_back(v[j] + v[j + 1]);
  return w;
}

}  // namespace sepsim
