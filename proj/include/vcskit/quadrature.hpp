#pragma once

// Product quadrature over the label domain: Gauss-Legendre in r on
// (0, R_max), trapezoid in ζ on [0, 2π), and for n = 2 a sphere rule
// (Gauss-Legendre in cos φ × trapezoid in ψ) normalised to total mass 1.

#include "vcskit/family.hpp"

#include <vector>

namespace vcskit::verify {

struct GaussRule {
  std::vector<double> nodes;    // ascending, in (-1, 1)
  std::vector<double> weights;  // sum to 2
};

/// n-point Gauss-Legendre rule on [-1, 1] (Newton on the three-term recurrence).
GaussRule gauss_legendre(int n);

struct GridSpec {
  int radial = 200;
  int zeta = 256;
  int sphere_polar = 32;
  int sphere_azimuth = 64;
  double r_max = 0.0;  // 0 selects R_max from the family's tail bound

  GridSpec doubled() const;
  bool operator==(const GridSpec&) const = default;
};

struct SphereNode {
  double phi;
  double psi;
  double weight;
};

class QuadratureGrid {
 public:
  /// Grid for n-component labels of `fam`, resolving radial moments up to
  /// mode `max_mode`.
  static QuadratureGrid build(const GridSpec& spec, const vcs::FamilySpec& fam, int max_mode, int n);

  int n() const { return n_; }
  double r_max() const { return r_max_; }
  /// Estimated mass of the highest radial moment beyond R_max.
  double tail_estimate() const { return tail_; }
  const GridSpec& spec() const { return spec_; }

  const std::vector<double>& radial_nodes() const { return r_nodes_; }
  const std::vector<double>& radial_weights() const { return r_weights_; }
  const std::vector<double>& zeta_nodes() const { return z_nodes_; }
  const std::vector<double>& zeta_weights() const { return z_weights_; }
  const std::vector<SphereNode>& sphere() const { return sphere_; }

  std::size_t size() const { return r_nodes_.size() * angular_size(); }
  std::size_t angular_size() const { return z_nodes_.size() * sphere_.size(); }

 private:
  int n_ = 2;
  double r_max_ = 0.0;
  double tail_ = 0.0;
  GridSpec spec_;
  std::vector<double> r_nodes_, r_weights_;
  std::vector<double> z_nodes_, z_weights_;
  std::vector<SphereNode> sphere_;
};

/// R_max for the radial moments m <= max_mode: L when finite, otherwise the
/// point beyond the integrand peak where λ(r) r^{2m+2}/ρ(m) < rel_tail.
/// Canonical radii also honour R_max² >= m + 8√m + 16.
double radial_cutoff(const vcs::FamilySpec& fam, int max_mode, double rel_tail = 1e-16);

/// Estimate of ∫_{R}^{∞} λ(r) r^{2m+1} dr / ρ(m) from the local decay rate.
double radial_tail_estimate(const vcs::FamilySpec& fam, int mode, double r_max);

/// Gauss-Legendre nodes and weights mapped to (0, r_max).
GaussRule radial_rule(int n, double r_max);

}  // namespace vcskit::verify
