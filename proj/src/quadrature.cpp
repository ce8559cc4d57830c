#include "vcskit/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vcskit::verify {

GaussRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

GaussRule radial_rule(int n, double r_max) {
  GaussRule g = gauss_legendre(n);
  for (int i = 0; i < n; ++i) {
    g.nodes[i] = 0.5 * r_max * (g.nodes[i] + 1.0);
    g.weights[i] *= 0.5 * r_max;
  }
  return g;
}

GridSpec GridSpec::doubled() const {
  GridSpec d = *this;
  d.radial *= 2;
  d.zeta *= 2;
  d.sphere_polar *= 2;
  d.sphere_azimuth *= 2;
  return d;
}

namespace {

double log_moment_integrand(const vcs::FamilySpec& fam, int m, double r) {
  return fam.log_lambda(r) + (2.0 * m + 1.0) * std::log(r) - fam.log_rho(m);
}

double cutoff_for_mode(const vcs::FamilySpec& fam, int m, double rel_tail) {
  const double target = std::log(rel_tail);
  const double dr = 0.05;
  double r = dr;
  double prev = log_moment_integrand(fam, m, r);
  for (int it = 0; it < 200000; ++it) {
    r += dr;
    const double cur = log_moment_integrand(fam, m, r);
    if (cur < prev && cur + std::log(r) < target) return r;
    prev = cur;
  }
  throw std::runtime_error("radial_cutoff: integrand does not decay");
}

}  // namespace

double radial_cutoff(const vcs::FamilySpec& fam, int max_mode, double rel_tail) {
  if (std::isfinite(fam.radius_bound())) return fam.radius_bound();
  double r = std::max(cutoff_for_mode(fam, 0, rel_tail), cutoff_for_mode(fam, max_mode, rel_tail));
  if (fam.name() == vcs::Family::canonical) {
    const double m = max_mode;
    r = std::max(r, std::sqrt(m + 8.0 * std::sqrt(m) + 16.0));
  }
  return r;
}

double radial_tail_estimate(const vcs::FamilySpec& fam, int mode, double r_max) {
  if (r_max >= fam.radius_bound()) return 0.0;
  const double h = 1e-3 * r_max;
  const double f0 = log_moment_integrand(fam, mode, r_max);
  const double f1 = log_moment_integrand(fam, mode, r_max + h);
  const double decay = (f0 - f1) / h;
  if (!(decay > 0.0)) return std::exp(f0) * r_max;
  return std::exp(f0) / decay;
}

QuadratureGrid QuadratureGrid::build(const GridSpec& spec, const vcs::FamilySpec& fam, int max_mode,
                                     int n) {
  if (n != 1 && n != 2) throw std::invalid_argument("QuadratureGrid: n must be 1 or 2");
  if (spec.radial < 2 || spec.zeta < 1 || spec.sphere_polar < 1 || spec.sphere_azimuth < 1) {
    throw std::invalid_argument("QuadratureGrid: grid sizes must be positive");
  }
  QuadratureGrid g;
  g.n_ = n;
  g.spec_ = spec;
  g.r_max_ = spec.r_max > 0.0 ? std::min(spec.r_max, fam.radius_bound())
                              : radial_cutoff(fam, max_mode);
  g.tail_ = std::max(radial_tail_estimate(fam, 0, g.r_max_),
                     radial_tail_estimate(fam, max_mode, g.r_max_));
  GaussRule rr = radial_rule(spec.radial, g.r_max_);
  g.r_nodes_ = std::move(rr.nodes);
  g.r_weights_ = std::move(rr.weights);

  const double two_pi = 2.0 * std::numbers::pi;
  for (int k = 0; k < spec.zeta; ++k) {
    g.z_nodes_.push_back(two_pi * k / spec.zeta);
    g.z_weights_.push_back(two_pi / spec.zeta);
  }

  if (n == 1) {
    g.sphere_.push_back({0.0, 0.0, 1.0});
  } else {
    const GaussRule polar = gauss_legendre(spec.sphere_polar);
    for (int i = 0; i < spec.sphere_polar; ++i) {
      const double phi = std::acos(polar.nodes[i]);
      for (int k = 0; k < spec.sphere_azimuth; ++k) {
        const double psi = two_pi * k / spec.sphere_azimuth;
        g.sphere_.push_back({phi, psi, polar.weights[i] / (2.0 * spec.sphere_azimuth)});
      }
    }
  }
  return g;
}

}  // namespace vcskit::verify
