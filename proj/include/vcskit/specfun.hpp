#pragma once

// Scalar special functions used by the coherent-state families: gamma,
// rising factorials, modified Bessel functions I and K, and 1F2.
//
// All routines are pure and may be called concurrently.

#include <stdexcept>

namespace vcskit::specfun {

/// Argument outside the mathematical domain of the function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct SpecFunResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
};

/// ln Γ(x) for x > 0.
double log_gamma(double x);

/// Rising factorial (a)_m = a(a+1)...(a+m-1). Exact product for m <= 64,
/// otherwise exp(lnΓ(a+m) - lnΓ(a)).
double pochhammer(double a, int m);
double log_pochhammer(double a, int m);

/// I_nu(x) by the ascending series. Throws std::overflow_error when the
/// result is not representable.
SpecFunResult bessel_i_result(double nu, double x);
double bessel_i(double nu, double x);

/// K_nu(x) = ∫_0^∞ exp(-x cosh t) cosh(nu t) dt, summed with the
/// trapezoidal rule (spectrally convergent for this entire integrand).
SpecFunResult bessel_k_result(double nu, double x);
double bessel_k(double nu, double x);

/// ln K_nu(x); stays finite where K_nu underflows.
double log_bessel_k(double nu, double x);

/// 1F2(a; b, c; x) = Σ (a)_m / ((b)_m (c)_m) x^m / m!.
SpecFunResult hyp1f2_result(double a, double b, double c, double x);
double hyp1f2(double a, double b, double c, double x);

}  // namespace vcskit::specfun
