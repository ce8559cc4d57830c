#pragma once

// Catalogue of coherent-state families: the ρ-sequence, closed-form
// normalisation, radial domain and the density λ(r) solving the moment
// problem ∫_0^L λ(r) r^{2m+1} dr = ρ(m).
//
// Normalisations are given for labels with A(r) = r·I_n; for a general
// normal A the scalar series is summed over the singular values of A.

#include "vcskit/fock.hpp"

#include <string>
#include <string_view>

namespace vcskit::vcs {

enum class Family { canonical, gilmore_perelomov, barut_girardello, interpolating };

class UnknownFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Canonical spelling with underscores, e.g. "gilmore_perelomov".
std::string to_string(Family f);
/// Accepts underscore or hyphen spellings and the short tags gp, bg, int.
Family parse_family(std::string_view name);

class OutOfDomain : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class FamilySpec {
 public:
  FamilySpec(Family name, double kappa);

  Family name() const { return name_; }
  /// SU(1,1) label; ignored by the canonical family.
  double kappa() const { return kappa_; }
  const fock::XSequence& xs() const { return xs_; }
  /// Radius of convergence L (infinity for all but Gilmore-Perelomov).
  double radius_bound() const { return radius_bound_; }
  bool in_domain(double r) const { return r >= 0.0 && r < radius_bound_; }

  double x(int m) const { return xs_.x(m); }
  double log_rho(int m) const { return xs_.log_rho(m); }
  double rho(int m) const { return xs_.rho(m); }

  /// ln Σ_m r^{2m}/ρ(m) in closed form.
  double log_scalar_normalization(double r) const;
  /// N(r) for A = r·I_n: n Σ_m r^{2m}/ρ(m), closed form.
  double normalization(double r, int n = 2) const;
  double log_normalization(double r, int n = 2) const;
  /// Same quantity by direct summation of the series.
  double normalization_series(double r, int n = 2) const;

  /// Density λ(r) of the radial moment problem.
  double lambda(double r) const;
  double log_lambda(double r) const;
  /// Resolution weight W(r) = N(r) λ(r) / 2π.
  double weight(double r, int n = 2) const;
  double log_weight(double r, int n = 2) const;

  /// Interpolating family only: the scalar density (2/π) t^{2κ-1} K_0(2√t)
  /// of the moment problem π ∫_0^∞ t^m λ(t) dt = [(2κ+m-1)!]^2.
  double printed_moment_density(double t) const;

  /// Upper bound on ln Σ_{m>=M} r^{2m}/ρ(m), using that x_m is nondecreasing.
  double log_tail_bound(double r, int M) const;
  /// Smallest M >= 2 with tail <= rel_tail · Σ_m r^{2m}/ρ(m).
  int required_truncation(double r, double rel_tail = 1e-14) const;

 private:
  Family name_;
  double kappa_;
  fock::XSequence xs_;
  double radius_bound_;
};

FamilySpec family_spec(Family name, double kappa = 1.0);
inline FamilySpec family_spec(std::string_view name, double kappa = 1.0) {
  return family_spec(parse_family(name), kappa);
}

}  // namespace vcskit::vcs
