#include "vcskit/family.hpp"

#include "vcskit/specfun.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>

namespace vcskit::vcs {

namespace sf = vcskit::specfun;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

fock::XSequence make_sequence(Family f, double kappa) {
  const double k2 = 2.0 * kappa;
  switch (f) {
    case Family::canonical:
      return fock::XSequence(
          "canonical", [](int m) { return double(m); }, 1.0,
          [](int m) { return sf::log_gamma(m + 1.0); });
    case Family::gilmore_perelomov:
      return fock::XSequence(
          "gilmore_perelomov", [k2](int m) { return m / (k2 + m - 1.0); }, 1.0,
          [k2](int m) { return sf::log_gamma(m + 1.0) - sf::log_pochhammer(k2, m); });
    case Family::barut_girardello:
      // ρ(m) = m! (2κ+m-1)!, so ρ(0) = Γ(2κ).
      return fock::XSequence(
          "barut_girardello", [k2](int m) { return m * (k2 + m - 1.0); }, std::tgamma(k2),
          [k2](int m) { return sf::log_gamma(m + 1.0) + sf::log_gamma(k2 + m); });
    case Family::interpolating:
      // ρ(m) = [(2κ+m-1)!]^2, so ρ(0) = Γ(2κ)^2.
      return fock::XSequence(
          "interpolating", [k2](int m) { return (k2 + m - 1.0) * (k2 + m - 1.0); },
          std::tgamma(k2) * std::tgamma(k2),
          [k2](int m) { return 2.0 * sf::log_gamma(k2 + m); });
  }
  throw UnknownFamily("unknown family");
}

std::string normalise_name(std::string_view name) {
  std::string s;
  for (char c : name) s.push_back(c == '-' ? '_' : static_cast<char>(std::tolower(c)));
  return s;
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::canonical: return "canonical";
    case Family::gilmore_perelomov: return "gilmore_perelomov";
    case Family::barut_girardello: return "barut_girardello";
    case Family::interpolating: return "interpolating";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  const std::string s = normalise_name(name);
  if (s == "canonical") return Family::canonical;
  if (s == "gilmore_perelomov" || s == "gp") return Family::gilmore_perelomov;
  if (s == "barut_girardello" || s == "bg") return Family::barut_girardello;
  if (s == "interpolating" || s == "int") return Family::interpolating;
  throw UnknownFamily("unknown family '" + std::string(name) + "'");
}

FamilySpec::FamilySpec(Family name, double kappa)
    : name_(name),
      kappa_(name == Family::canonical ? 0.0 : kappa),
      xs_(make_sequence(name, kappa)),
      radius_bound_(name == Family::gilmore_perelomov ? 1.0 : kInf) {
  if (name != Family::canonical && !fock::is_discrete_series_label(kappa)) {
    throw std::invalid_argument("family_spec: kappa must be one of 1, 3/2, 2, ... (got " +
                                std::to_string(kappa) + ")");
  }
}

double FamilySpec::log_scalar_normalization(double r) const {
  if (!in_domain(r)) {
    throw OutOfDomain("radius " + std::to_string(r) + " outside the domain of " + to_string(name_));
  }
  const double nu = 2.0 * kappa_ - 1.0;
  switch (name_) {
    case Family::canonical:
      return r * r;
    case Family::gilmore_perelomov:
      return -2.0 * kappa_ * std::log1p(-r * r);
    case Family::barut_girardello:
      // I_ν(2r) / r^ν, finite limit 1/Γ(2κ) at r = 0.
      if (r < 1e-8) return -sf::log_gamma(nu + 1.0) + r * r / (nu + 1.0);
      return std::log(sf::bessel_i(nu, 2.0 * r)) - nu * std::log(r);
    case Family::interpolating:
      return std::log(sf::hyp1f2(1.0, 2.0 * kappa_, 2.0 * kappa_, r * r)) -
             2.0 * sf::log_gamma(2.0 * kappa_);
  }
  return 0.0;
}

double FamilySpec::log_normalization(double r, int n) const {
  return std::log(double(n)) + log_scalar_normalization(r);
}

double FamilySpec::normalization(double r, int n) const {
  return std::exp(log_normalization(r, n));
}

double FamilySpec::normalization_series(double r, int n) const {
  if (!in_domain(r)) throw OutOfDomain("normalization_series: radius outside the domain");
  if (r == 0.0) return n / rho(0);
  const double lr = std::log(r);
  double sum = 0.0;
  for (int m = 0; m < 1000000; ++m) {
    const double term = std::exp(2.0 * m * lr - log_rho(m));
    sum += term;
    const double ratio = r * r / x(m + 1);
    if (ratio < 1.0 && term * ratio / (1.0 - ratio) < 1e-17 * sum) break;
  }
  return n * sum;
}

double FamilySpec::log_lambda(double r) const {
  if (r < 0.0 || r >= radius_bound_) return -kInf;
  const double nu = 2.0 * kappa_ - 1.0;
  switch (name_) {
    case Family::canonical:
      return std::log(2.0) - r * r;
    case Family::gilmore_perelomov:
      if (kappa_ == 1.0) return std::log(2.0);
      return std::log(2.0 * nu) + (2.0 * kappa_ - 2.0) * std::log1p(-r * r);
    case Family::barut_girardello:
      // 4 r^ν K_ν(2r) gives ∫ λ r^{2m+1} dr = m! Γ(m+2κ).
      if (r == 0.0) throw std::domain_error("barut_girardello density not evaluated at r = 0");
      return std::log(4.0) + nu * std::log(r) + sf::log_bessel_k(nu, 2.0 * r);
    case Family::interpolating:
      // 2π λ_printed(r²) = 4 r^{4κ-2} K_0(2r).
      if (r == 0.0) throw std::domain_error("interpolating density not evaluated at r = 0");
      return std::log(4.0) + (4.0 * kappa_ - 2.0) * std::log(r) + sf::log_bessel_k(0.0, 2.0 * r);
  }
  return 0.0;
}

double FamilySpec::lambda(double r) const { return std::exp(log_lambda(r)); }

double FamilySpec::log_weight(double r, int n) const {
  return log_normalization(r, n) + log_lambda(r) - std::log(2.0 * std::numbers::pi);
}

double FamilySpec::weight(double r, int n) const { return std::exp(log_weight(r, n)); }

double FamilySpec::printed_moment_density(double t) const {
  if (name_ != Family::interpolating) {
    throw std::logic_error("printed_moment_density is defined for the interpolating family only");
  }
  if (!(t > 0.0)) throw std::domain_error("printed_moment_density: t must be positive");
  return 2.0 / std::numbers::pi * std::pow(t, 2.0 * kappa_ - 1.0) *
         sf::bessel_k(0.0, 2.0 * std::sqrt(t));
}

double FamilySpec::log_tail_bound(double r, int M) const {
  if (r == 0.0) return -kInf;
  const double ratio = r * r / x(M + 1);
  if (ratio >= 1.0) return kInf;
  return 2.0 * M * std::log(r) - log_rho(M) - std::log1p(-ratio);
}

int FamilySpec::required_truncation(double r, double rel_tail) const {
  if (!in_domain(r)) throw OutOfDomain("required_truncation: radius outside the domain");
  const double budget = std::log(rel_tail) + log_scalar_normalization(r);
  for (int M = 2; M < 1000000; ++M) {
    if (log_tail_bound(r, M) <= budget) return M;
  }
  throw std::runtime_error("required_truncation: no truncation below 10^6 meets the budget");
}

FamilySpec family_spec(Family name, double kappa) { return FamilySpec(name, kappa); }

}  // namespace vcskit::vcs
