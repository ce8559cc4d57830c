#include "vcskit/resolution.hpp"

#include "vcskit/matrixdomain.hpp"

#include <omp.h>

#include <cmath>
#include <numbers>

namespace vcskit::verify {

namespace {

constexpr int kZetaChunks = 16;

// Sphere moments of σ(n̂): the integrand of G depends on the sphere node
// only through σ and σ ⊗ σ̄, so the sphere sum reduces to these exactly.
struct SphereMoments {
  double mass = 0.0;
  Matrix2c first = Matrix2c::Zero();   // Σ w σ
  Matrix2c second = Matrix2c::Zero();  // (jp, jq) -> Σ_j Σ w σ_{jp j} conj(σ_{jq j})
};

SphereMoments sphere_moments(const QuadratureGrid& grid) {
  SphereMoments mom;
  for (const SphereNode& s : grid.sphere()) {
    const Matrix2c sig = matrixdomain::sigma_n(s.phi, s.psi);
    mom.mass += s.weight;
    mom.first += s.weight * sig;
    mom.second += s.weight * sig * sig.adjoint();
  }
  return mom;
}

// Trigonometric Gram blocks over ζ in [k0, k1):
// cc = Σ w cos mζ cos lζ, cs = Σ w cos mζ sin lζ, ss = Σ w sin mζ sin lζ.
struct TrigBlocks {
  Eigen::MatrixXd cc, cs, ss;
};

TrigBlocks trig_blocks(int modes, const QuadratureGrid& grid, int k0, int k1) {
  const int cnt = k1 - k0;
  Eigen::MatrixXd c(modes, cnt);
  Eigen::MatrixXd s(modes, cnt);
  for (int k = 0; k < cnt; ++k) {
    const double zeta = grid.zeta_nodes()[k0 + k];
    const double sw = std::sqrt(grid.zeta_weights()[k0 + k]);
    for (int m = 0; m < modes; ++m) {
      c(m, k) = sw * std::cos(m * zeta);
      s(m, k) = sw * std::sin(m * zeta);
    }
  }
  TrigBlocks t;
  t.cc = c * c.transpose();
  t.cs = c * s.transpose();
  t.ss = s * s.transpose();
  return t;
}

// G for U^m = cos mζ I + i sin mζ σ(n̂) (n = 2) or e^{imζ} (n = 1):
// Σ_j U^m_{jp j} conj(U^l_{jq j}) = cc δ·mass - i cs conj(first_{jq jp})
//   + i sc first_{jp jq} + ss second_{jp jq}.
MatrixXc gram_from_blocks(int n, int modes, const TrigBlocks& t, const SphereMoments& mom) {
  const cplx i(0.0, 1.0);
  MatrixXc g(n * modes, n * modes);
  if (n == 1) {
    g = (t.cc + t.ss).cast<cplx>() + i * (t.cs.transpose() - t.cs).cast<cplx>();
    return g;
  }
  for (int jp = 0; jp < 2; ++jp) {
    for (int jq = 0; jq < 2; ++jq) {
      const cplx a = jp == jq ? cplx(mom.mass) : cplx(0.0);
      const cplx b = -i * std::conj(mom.first(jq, jp));
      const cplx c = i * mom.first(jp, jq);
      const cplx d = mom.second(jp, jq);
      g.block(jp * modes, jq * modes, modes, modes) =
          a * t.cc.cast<cplx>() + b * t.cs.cast<cplx>() + c * t.cs.transpose().cast<cplx>() +
          d * t.ss.cast<cplx>();
    }
  }
  return g;
}

}  // namespace

MatrixXc angular_gram(int n, int modes, const QuadratureGrid& grid, Execution exec) {
  if (n != grid.n()) throw std::invalid_argument("angular_gram: grid built for a different n");
  if (modes < 1) throw std::invalid_argument("angular_gram: modes must be positive");
  const SphereMoments mom = sphere_moments(grid);
  const int nz = static_cast<int>(grid.zeta_nodes().size());
  const int chunks = std::min(kZetaChunks, nz);
  std::vector<TrigBlocks> partial(chunks);
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
  for (int c = 0; c < chunks; ++c) {
    const int k0 = static_cast<int>(static_cast<long>(nz) * c / chunks);
    const int k1 = static_cast<int>(static_cast<long>(nz) * (c + 1) / chunks);
    partial[c] = trig_blocks(modes, grid, k0, k1);
  }
  TrigBlocks total = partial.front();
  for (int c = 1; c < chunks; ++c) {
    total.cc += partial[c].cc;
    total.cs += partial[c].cs;
    total.ss += partial[c].ss;
  }
  return gram_from_blocks(n, modes, total, mom);
}

Eigen::MatrixXd radial_factor(const vcs::FamilySpec& fam, int n, int modes, const QuadratureGrid& grid,
                              bool weighted) {
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(modes, modes);
  const auto& nodes = grid.radial_nodes();
  const auto& weights = grid.radial_weights();
  std::vector<double> lr(modes);
  for (int m = 0; m < modes; ++m) lr[m] = 0.5 * fam.log_rho(m);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double x = nodes[i];
    const double log_n = fam.log_normalization(x, n);
    const double base = std::log(weights[i] * x) - log_n +
                        (weighted ? fam.log_weight(x, n) : 0.0);
    const double lx = std::log(x);
    Eigen::VectorXd f(modes);
    for (int m = 0; m < modes; ++m) f(m) = std::exp(0.5 * base + m * lx - lr[m]);
    r.noalias() += f * f.transpose();
  }
  return r;
}

MatrixXc combine(const MatrixXc& gram, const Eigen::MatrixXd& radial, int n, int modes) {
  MatrixXc s = gram;
  for (int j = 0; j < n; ++j) {
    for (int jp = 0; jp < n; ++jp) {
      s.block(j * modes, jp * modes, modes, modes).array() *= radial.array().cast<cplx>();
    }
  }
  return s;
}

const MatrixXc& GramCache::get(int n, int modes, const QuadratureGrid& grid, Execution exec) {
  const GridSpec& g = grid.spec();
  const Key key{n, modes, g.zeta, n == 2 ? g.sphere_polar : 1, n == 2 ? g.sphere_azimuth : 1};
  {
    std::lock_guard lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  MatrixXc value = angular_gram(n, modes, grid, exec);
  std::lock_guard lock(mu_);
  return cache_.emplace(key, std::move(value)).first->second;
}

std::size_t GramCache::size() const {
  std::lock_guard lock(mu_);
  return cache_.size();
}

MatrixXc assemble_resolution(const vcs::FamilySpec& fam, int n, int modes, const QuadratureGrid& grid,
                             const AssemblyOptions& opt) {
  const Eigen::MatrixXd radial = radial_factor(fam, n, modes, grid, opt.weighted);
  if (opt.cache != nullptr) return combine(opt.cache->get(n, modes, grid, opt.exec), radial, n, modes);
  return combine(angular_gram(n, modes, grid, opt.exec), radial, n, modes);
}

MatrixXc assemble_resolution_reference(const vcs::FamilySpec& fam, int n, int modes,
                                       const QuadratureGrid& grid, bool weighted) {
  if (n != grid.n()) throw std::invalid_argument("assemble_resolution_reference: grid built for a different n");
  const int dim = n * modes;
  MatrixXc s = MatrixXc::Zero(dim, dim);
  const auto& rn = grid.radial_nodes();
  const auto& rw = grid.radial_weights();
  for (std::size_t i = 0; i < rn.size(); ++i) {
    const double r = rn[i];
    const double wr = rw[i] * r * (weighted ? fam.weight(r, n) : 1.0);
    for (std::size_t k = 0; k < grid.zeta_nodes().size(); ++k) {
      const double zeta = grid.zeta_nodes()[k];
      const double wz = grid.zeta_weights()[k];
      for (const SphereNode& node : grid.sphere()) {
        const matrixdomain::MatrixVariable label =
            n == 2 ? matrixdomain::MatrixVariable::from_quaternion({r, zeta, node.phi, node.psi})
                   : matrixdomain::MatrixVariable::scalar(r, zeta);
        const double w = wr * wz * node.weight;
        for (int j = 0; j < n; ++j) {
          const VectorXc c = vcs::state_coefficients(fam, label, j, modes).coeffs;
          s.noalias() += w * c * c.adjoint();
        }
      }
    }
  }
  return s;
}

}  // namespace vcskit::verify
