#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>

namespace sepsim {

/// Chooses the +c (sufficient) or -c (insufficient) branch of a two-sided
/// sensor-count threshold.
enum class Sign { Plus, Minus };

/// Parameters for the deterministic-grid thresholds. r = a/2n (or the wide
/// variant (2-a)/2n); c is a finite stand-in for the divergent additive term.
struct GridParams {
  double n = 1.0;
  double a = 1.0;
  double alpha = 0.5;
  double beta = 0.5;
  double c = 0.0;

  void validate() const;
};

/// Parameters for the random-layout thresholds, with the derived constants
///   c1 = ln(1/(1-(1-alpha1)(1-beta)))
///   c2 = ln(1/(1-(1-alpha)(1-beta)))
///   c3 = ln(1/(alpha*beta))
struct RandomParams {
  double n = 1.0;
  double c_n = 1.0;
  double f_n = 3.0;
  double alpha = 0.5;
  double beta = 0.5;
  double alpha1 = 0.75;
  double theta1 = 0.5;
  double theta2 = 0.5;
  double a = 2.0;

  double c1() const;
  double c2() const;
  double c3() const;

  /// Type invariants: ranges, alpha < alpha1, 0 < theta1 <= theta2 <
  /// 1/(1 + c1/n), a > 1. Violations raise std::invalid_argument;
  /// operation-specific validity is checked by the operations themselves and
  /// raises TheoremDomainError.
  void validate() const;
};

/// (exp(-m*theta/(1-theta)), exp(-m*theta)); the true (1-theta)^m lies
/// strictly between for every positive integer m.
std::pair<double, double> exp_bounds(double theta, std::uint64_t m);

/// Joint tail of any k spacings of n uniform points: (1 - sum v_i)^n,
/// 0 once the thresholds sum past 1.
double spacing_tail(std::span<const double> v, std::size_t n);

/// P(all n-1 inter-target spacings exceed d) = (1 - (n-1)d)^n.
double min_spacing_prob(std::size_t n, double d);

/// Distribution-free bounds on P(S_n > alpha*n) for S_n a sum of n
/// mean-p indicators: ((p-alpha)/(1-alpha) clamped to 0, p/alpha clamped
/// to 1).
std::pair<double, double> bernoulli_partial_bounds(double p, double alpha);

/// Exact P(every one of n coupon types appears in m uniform draws), by
/// inclusion-exclusion in log domain with compensated summation. m may be
/// real; m < n returns 0. Accurate in the m >~ n ln n regime.
double coupon_all_collected_prob(std::size_t n, double m);

/// Limit of the above at m = n(ln n + c): exp(-e^{-c}). The limit does not
/// depend on n.
double coupon_asymptotic(std::size_t n, double c);

// Deterministic grid, 1D.
double grid_radius(double n, double a, bool wide = false);
double grid_full_m(const GridParams& p, Sign sign);
double grid_partial_m_sufficient(const GridParams& p);
double grid_partial_m_necessary(const GridParams& p);

// Uniform-random layout, 1D.
double random_full_r(double n, double c_n);
double random_full_m(double n, double c_n, double f_n, Sign sign);
double random_partial_r_sufficient(double n, double alpha1, double beta);
double random_partial_r_necessary(double n, double alpha1, double beta);
double random_partial_m_sufficient(const RandomParams& p);
double random_partial_m_necessary(const RandomParams& p);

/// Variant of the partial sufficient count using the alternative denominator
/// c2 - 2*a*theta2*c1. Its own constraint set (a > c2/(2*theta1*c1),
/// theta1 <= theta2) forces that denominator negative for every admissible
/// parameter choice, so this always raises TheoremDomainError. Kept callable
/// so the behaviour is auditable; use random_partial_m_sufficient.
double random_partial_m_sufficient_as_printed(const RandomParams& p);

// 2D: grid at cell midpoints with pi r^2 = pi/4n, random with
// pi r^2 = 1/(n c_n). Same shapes with n/a -> 4n/pi and the partial forms
// carrying (a-1)^2 and a^2 factors.
double grid_radius_2d(double n);
double grid_full_m_2d(double n, double c, Sign sign);
double grid_partial_m_2d_sufficient(double n, double alpha, double beta);
double grid_partial_m_2d_necessary(double n, double alpha, double beta);
double random_full_r_2d(double n, double c_n);
double random_full_m_2d(double n, double c_n, double g_n, Sign sign);
double random_partial_r_sufficient_2d(double n, double alpha1, double beta, double a);
double random_partial_r_necessary_2d(double n, double alpha1, double beta, double a);
double random_partial_m_sufficient_2d(const RandomParams& p);
double random_partial_m_necessary_2d(const RandomParams& p);

}  // namespace sepsim
