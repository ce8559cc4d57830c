#include "vcskit/specfun.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace vcskit::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kLogMax = 709.78;

bool is_nonpositive_integer(double v) {
  return v <= 0.0 && std::floor(v) == v;
}

// log cosh(y) without overflow for large |y|.
double log_cosh(double y) {
  const double a = std::abs(y);
  return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
  }
  return boost::math::lgamma(x);
}

double pochhammer(double a, int m) {
  if (!(a > 0.0)) throw DomainError("pochhammer: a must be positive");
  if (m < 0) throw DomainError("pochhammer: m must be nonnegative");
  if (m <= 64) {
    double p = 1.0;
    for (int k = 0; k < m; ++k) p *= a + k;
    return p;
  }
  return std::exp(log_pochhammer(a, m));
}

double log_pochhammer(double a, int m) {
  if (!(a > 0.0)) throw DomainError("log_pochhammer: a must be positive");
  if (m < 0) throw DomainError("log_pochhammer: m must be nonnegative");
  if (m <= 64) {
    double s = 0.0;
    for (int k = 0; k < m; ++k) s += std::log(a + k);
    return s;
  }
  return log_gamma(a + m) - log_gamma(a);
}

SpecFunResult bessel_i_result(double nu, double x) {
  if (nu < 0.0) throw DomainError("bessel_i: order must be nonnegative");
  if (x < 0.0) throw DomainError("bessel_i: argument must be nonnegative");
  if (x == 0.0) return {nu == 0.0 ? 1.0 : 0.0, 0.0};

  // Sum the series relative to its first term t0 = (x/2)^nu / Γ(nu+1).
  const double half = 0.5 * x;
  const double q = half * half;
  double term = 1.0;
  double sum = 1.0;
  int m = 0;
  for (; m < 100000; ++m) {
    term *= q / ((m + 1.0) * (m + 1.0 + nu));
    sum += term;
    const bool decreasing = (m + 2.0) * (m + 2.0 + nu) > q;
    if (decreasing && term < 1e-17 * sum) break;
  }
  const double log_t0 = nu * std::log(half) - log_gamma(nu + 1.0);
  const double log_value = log_t0 + std::log(sum);
  if (log_value > kLogMax) {
    throw std::overflow_error("bessel_i: result overflows for nu=" + std::to_string(nu) +
                              ", x=" + std::to_string(x));
  }
  const double value = std::exp(log_value);
  return {value, value * (term / sum + 4.0 * (m + 1) * kEps)};
}

double bessel_i(double nu, double x) { return bessel_i_result(nu, x).value; }

namespace {

// e^x K_nu(x) on the trapezoid grid of step h; also returns the sum over
// every second node (step 2h) for the error estimate.
struct ScaledK {
  double fine;
  double coarse;
};

ScaledK scaled_bessel_k(double nu, double x, double h) {
  double fine = 0.5;  // t = 0 node: exp(0) cosh(0) / 2
  double coarse = 0.5;
  for (int k = 1; k < 1000000; ++k) {
    const double t = k * h;
    const double log_term = -x * (std::cosh(t) - 1.0) + log_cosh(nu * t);
    const double term = std::exp(log_term);
    fine += term;
    if (k % 2 == 0) coarse += term;
    const bool past_peak = x * std::sinh(t) > nu;
    if (past_peak && term < 1e-18 * fine) break;
  }
  return {fine * h, coarse * 2.0 * h};
}

}  // namespace

SpecFunResult bessel_k_result(double nu, double x) {
  if (nu < 0.0) throw DomainError("bessel_k: order must be nonnegative");
  if (!(x > 0.0)) throw DomainError("bessel_k: argument must be positive (log singularity at 0)");
  const double h = std::min(0.05, 0.5 / std::sqrt(x));
  const ScaledK s = scaled_bessel_k(nu, x, h);
  const double scale = std::exp(-x);
  const double value = s.fine * scale;
  const double err = (std::abs(s.fine - s.coarse) + 64.0 * kEps * s.fine) * scale;
  return {value, err};
}

double bessel_k(double nu, double x) { return bessel_k_result(nu, x).value; }

double log_bessel_k(double nu, double x) {
  if (nu < 0.0) throw DomainError("log_bessel_k: order must be nonnegative");
  if (!(x > 0.0)) throw DomainError("log_bessel_k: argument must be positive");
  const double h = std::min(0.05, 0.5 / std::sqrt(x));
  return -x + std::log(scaled_bessel_k(nu, x, h).fine);
}

SpecFunResult hyp1f2_result(double a, double b, double c, double x) {
  if (is_nonpositive_integer(b) || is_nonpositive_integer(c)) {
    throw DomainError("hyp1f2: b and c must not be nonpositive integers");
  }
  if (x < 0.0) throw DomainError("hyp1f2: argument must be nonnegative");

  double term = 1.0;
  double sum = 1.0;
  double ratio = 0.0;
  for (int m = 0; m < 100000; ++m) {
    ratio = (a + m) * x / ((b + m) * (c + m) * (m + 1.0));
    term *= ratio;
    sum += term;
    if (term == 0.0) break;
    const double next_ratio = std::abs((a + m + 1) * x / ((b + m + 1) * (c + m + 1) * (m + 2.0)));
    if (next_ratio < 0.5 && std::abs(term) < 1e-16 * std::abs(sum)) {
      ratio = next_ratio;
      break;
    }
  }
  // Remaining tail bounded by a geometric series with the last ratio.
  const double tail = std::abs(term) * ratio / (1.0 - ratio);
  return {sum, tail + 4.0 * kEps * std::abs(sum)};
}

double hyp1f2(double a, double b, double c, double x) { return hyp1f2_result(a, b, c, x).value; }

}  // namespace vcskit::specfun
