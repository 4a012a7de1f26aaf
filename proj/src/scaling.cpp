#include "sepsim/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sepsim/errors.hpp"

namespace sepsim {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void require_prob(double x, const char* name) {
  if (!(x > 0.0 && x < 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in (0,1)");
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

double signed_term(double base, double c, Sign sign) {
  return sign == Sign::Plus ? base + c : base - c;
}

}  // namespace

void GridParams::validate() const {
  require(std::isfinite(n) && n > 0.0, "n must be positive");
  require(a > 0.0 && a <= 1.0, "a must lie in (0,1]");
  require_prob(alpha, "alpha");
  require_prob(beta, "beta");
  require(std::isfinite(c), "c must be finite");
}

double RandomParams::c1() const { return std::log(1.0 / (1.0 - (1.0 - alpha1) * (1.0 - beta))); }
double RandomParams::c2() const { return std::log(1.0 / (1.0 - (1.0 - alpha) * (1.0 - beta))); }
double RandomParams::c3() const { return std::log(1.0 / (alpha * beta)); }

void RandomParams::validate() const {
  require(std::isfinite(n) && n > 0.0, "n must be positive");
  require(c_n > 0.0, "c_n must be positive");
  require(f_n > 0.0, "f_n must be positive");
  require_prob(alpha, "alpha");
  require_prob(beta, "beta");
  require_prob(alpha1, "alpha1");
  require(alpha < alpha1, "alpha must be less than alpha1");
  require(theta1 > 0.0 && theta1 <= theta2, "need 0 < theta1 <= theta2");
  require(theta2 < 1.0 / (1.0 + c1() / n), "theta2 must be below 1/(1 + c1/n)");
  require(a > 1.0, "a must exceed 1");
}

std::pair<double, double> exp_bounds(double theta, std::uint64_t m) {
  require_prob(theta, "theta");
  require(m > 0, "m must be positive");
  auto md = static_cast<double>(m);
  return {std::exp(-md * theta / (1.0 - theta)), std::exp(-md * theta)};
}

double spacing_tail(std::span<const double> v, std::size_t n) {
  require(v.size() <= n, "more spacings than points");
  double sum = 0.0;
  for (double x : v) {
    require(x >= 0.0, "spacing thresholds must be non-negative");
    sum += x;
  }
  if (sum >= 1.0) return 0.0;
  return std::pow(1.0 - sum, static_cast<double>(n));
}

double min_spacing_prob(std::size_t n, double d) {
  require(d >= 0.0, "d must be non-negative");
  require(n >= 1, "n must be positive");
  double span = static_cast<double>(n - 1) * d;
  if (span >= 1.0) return 0.0;
  return std::pow(1.0 - span, static_cast<double>(n));
}

std::pair<double, double> bernoulli_partial_bounds(double p, double alpha) {
  require(p >= 0.0 && p <= 1.0, "p must lie in [0,1]");
  require_prob(alpha, "alpha");
  double lower = clamp01((p - alpha) / (1.0 - alpha));
  double upper = clamp01(p / alpha);
  return {lower, upper};
}

double coupon_all_collected_prob(std::size_t n, double m) {
  require(n >= 1, "n must be positive");
  require(m >= 0.0, "m must be non-negative");
  if (m < static_cast<double>(n)) return 0.0;
  double nd = static_cast<double>(n);
  // Alternating sum of exp(ln C(n,k) + m ln(1-k/n)); the k=n term is 0.
  // Kahan compensation keeps the heavy cancellation survivable.
  double sum = 0.0, comp = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double kd = static_cast<double>(k);
    double lg = std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) -
                std::lgamma(nd - kd + 1.0) + m * std::log1p(-kd / nd);
    double term = std::exp(lg);
    if (k & 1) term = -term;
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return clamp01(sum);
}

double coupon_asymptotic(std::size_t n, double c) {
  require(n >= 1, "n must be positive");
  return std::exp(-std::exp(-c));
}

double grid_radius(double n, double a, bool wide) {
  require(std::isfinite(n) && n > 0.0, "n must be positive");
  require(a > 0.0 && a <= 1.0, "a must lie in (0,1]");
  return (wide ? 2.0 - a : a) / (2.0 * n);
}

double grid_full_m(const GridParams& p, Sign sign) {
  p.validate();
  double base = p.n / p.a;
  return base * signed_term(std::log(base), p.c, sign);
}

double grid_partial_m_sufficient(const GridParams& p) {
  p.validate();
  return (p.n / p.a) * std::log(1.0 / ((1.0 - p.alpha) * (1.0 - p.beta)));
}

double grid_partial_m_necessary(const GridParams& p) {
  p.validate();
  return (p.n / p.a - 1.0) * std::log(1.0 / (1.0 - p.alpha * p.beta));
}

double random_full_r(double n, double c_n) {
  require(std::isfinite(n) && n > 0.0, "n must be positive");
  require(c_n > 0.0, "c_n must be positive");
  return 1.0 / (c_n * n * n);
}

double random_full_m(double n, double c_n, double f_n, Sign sign) {
  require(std::isfinite(n) && n > 0.0, "n must be positive");
  require(c_n > 0.0, "c_n must be positive");
  require(f_n > 0.0, "f_n must be positive");
  double half_inv_r = n * n * c_n / 2.0;
  return half_inv_r * signed_term(2.0 * std::log(n) + std::log(c_n / 2.0), f_n, sign);
}

namespace {
double partial_c1(double alpha1, double beta) {
  require_prob(alpha1, "alpha1");
  require_prob(beta, "beta");
  return std::log(1.0 / (1.0 - (1.0 - alpha1) * (1.0 - beta)));
}
}  // namespace

double random_partial_r_sufficient(double n, double alpha1, double beta) {
  require(std::isfinite(n) && n > 0.0, "n must be positive");
  return 0.5 / (n / partial_c1(alpha1, beta) + 1.0);
}

double random_partial_r_necessary(double n, double alpha1, double beta) {
  require(std::isfinite(n) && n > 0.0, "n must be positive");
  require_prob(alpha1, "alpha1");
  require_prob(beta, "beta");
  return std::log(1.0 / (alpha1 * beta)) / (2.0 * n);
}

double random_partial_m_sufficient(const RandomParams& p) {
  p.validate();
  double c1 = p.c1(), c2 = p.c2();
  if (!(p.a > c2 / (2.0 * p.theta1 * c1)))
    throw TheoremDomainError("a must exceed c2/(2*theta1*c1)");
  double denom = c2 - p.a * p.theta2 * c1;
  if (!(denom > 0.0))
    throw TheoremDomainError("c2 - a*theta2*c1 must be positive");
  return (p.n / (p.theta1 * (p.a - 1.0) * c1)) * std::log1p(1.0 / denom);
}

double random_partial_m_sufficient_as_printed(const RandomParams& p) {
  p.validate();
  double c1 = p.c1(), c2 = p.c2();
  if (!(p.a > c2 / (2.0 * p.theta1 * c1)))
    throw TheoremDomainError("a must exceed c2/(2*theta1*c1)");
  double denom = c2 - 2.0 * p.a * p.theta2 * c1;
  if (!(denom > 0.0))
    throw TheoremDomainError("c2 - 2*a*theta2*c1 must be positive");
  return (p.n / (p.theta1 * (p.a - 1.0) * c1)) * std::log1p(1.0 / denom);
}

double random_partial_m_necessary(const RandomParams& p) {
  p.validate();
  double c1 = p.c1(), c3 = p.c3();
  double inner = c3 - p.a * p.theta1 * c1;
  if (!(inner > 0.0 && inner < 1.0))
    throw TheoremDomainError("c3 - a*theta1*c1 must lie in (0,1)");
  return (p.n / (p.theta2 * (p.a - 1.0) * c1) - 1.0) * std::log(1.0 / inner);
}

double grid_radius_2d(double n) {
  require(std::isfinite(n) && n > 0.0, "n must be positive");
  return 1.0 / (2.0 * std::sqrt(n));
}

double grid_full_m_2d(double n, double c, Sign sign) {
  require(std::isfinite(n) && n > 0.0, "n must be positive");
  require(std::isfinite(c), "c must be finite");
  double base = 4.0 * n / std::numbers::pi;
  return base * signed_term(std::log(base), c, sign);
}

double grid_partial_m_2d_sufficient(double n, double alpha, double beta) {
  require(std::isfinite(n) && n > 0.0, "n must be positive");
  require_prob(alpha, "alpha");
  require_prob(beta, "beta");
  return (4.0 * n / std::numbers::pi) * std::log(1.0 / ((1.0 - alpha) * (1.0 - beta)));
}

double grid_partial_m_2d_necessary(double n, double alpha, double beta) {
  require(std::isfinite(n) && n > 0.0, "n must be positive");
  require_prob(alpha, "alpha");
  require_prob(beta, "beta");
  return (4.0 * n / std::numbers::pi - 1.0) * std::log(1.0 / (1.0 - alpha * beta));
}

double random_full_r_2d(double n, double c_n) {
  require(std::isfinite(n) && n > 0.0, "n must be positive");
  require(c_n > 0.0, "c_n must be positive");
  return std::sqrt(1.0 / (std::numbers::pi * n * c_n));
}

double random_full_m_2d(double n, double c_n, double g_n, Sign sign) {
  require(std::isfinite(n) && n > 0.0, "n must be positive");
  require(c_n > 0.0, "c_n must be positive");
  require(g_n > 0.0, "g_n must be positive");
  double base = n * c_n;
  return base * signed_term(std::log(base), g_n, sign);
}

double random_partial_r_sufficient_2d(double n, double alpha1, double beta, double a) {
  require(std::isfinite(n) && n > 0.0, "n must be positive");
  require(a > 1.0, "a must exceed 1");
  double c1 = partial_c1(alpha1, beta);
  double area = 1.0 / (a * a * ((n - 1.0) / c1 + 1.0));
  return std::sqrt(area / std::numbers::pi);
}

double random_partial_r_necessary_2d(double n, double alpha1, double beta, double a) {
  require(std::isfinite(n) && n > 0.0, "n must be positive");
  require(a > 1.0, "a must exceed 1");
  require_prob(alpha1, "alpha1");
  require_prob(beta, "beta");
  double area = std::log(1.0 / (alpha1 * beta)) / (a * a * n);
  return std::sqrt(area / std::numbers::pi);
}

double random_partial_m_sufficient_2d(const RandomParams& p) {
  p.validate();
  double c1 = p.c1(), c2 = p.c2();
  double a2 = p.a * p.a;
  if (!(a2 > c2 / (2.0 * p.theta1 * c1)))
    throw TheoremDomainError("a^2 must exceed c2/(2*theta1*c1)");
  double denom = c2 - a2 * p.theta2 * c1;
  if (!(denom > 0.0))
    throw TheoremDomainError("c2 - a^2*theta2*c1 must be positive");
  double lead = p.n / (p.theta1 * (p.a - 1.0) * (p.a - 1.0) * c1);
  return lead * std::log1p(1.0 / denom);
}

double random_partial_m_necessary_2d(const RandomParams& p) {
  p.validate();
  double c1 = p.c1(), c3 = p.c3();
  double inner = c3 - p.a * p.a * p.theta1 * c1;
  if (!(inner > 0.0 && inner < 1.0))
    throw TheoremDomainError("c3 - a^2*theta1*c1 must lie in (0,1)");
  double lead = p.n / (p.theta2 * (p.a - 1.0) * (p.a - 1.0) * c1) - 1.0;
  return lead * std::log(1.0 / inner);
}

}  // namespace sepsim
