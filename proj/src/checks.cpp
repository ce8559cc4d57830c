#include "vcskit/checks.hpp"

#include "vcskit/specfun.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace vcskit::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fam_name(const vcs::FamilySpec& fam) { return vcs::to_string(fam.name()); }

nlohmann::json grid_params(const QuadratureGrid& g) {
  const GridSpec& s = g.spec();
  return {{"grid_r", s.radial},
          {"grid_zeta", s.zeta},
          {"grid_sphere", {s.sphere_polar, s.sphere_azimuth}},
          {"r_max", g.r_max()},
          {"tail_estimate", g.tail_estimate()}};
}

VerificationReport tail_failure(std::string check, const vcs::FamilySpec& fam, int M, double tol,
                                const vcs::TailBudgetError& e) {
  return VerificationReport::make(std::move(check), fam_name(fam), fam.kappa(), M, kInf, tol,
                                  {{"error", e.what()},
                                   {"required_M", e.required_M()},
                                   {"radius", e.radius()}});
}

MatrixVariable label_of(const Quaternion& q) { return MatrixVariable::from_quaternion(q.to_polar()); }

int auto_truncation(const vcs::FamilySpec& fam, const MatrixVariable& z, double rel_tail) {
  return fam.required_truncation(z.radius(), rel_tail);
}

// Columns |Z, j>, j = 0..n-1, on `modes` modes.
MatrixXc state_columns(const vcs::FamilySpec& fam, const MatrixVariable& z, int modes) {
  MatrixXc v(z.dim() * modes, z.dim());
  for (int j = 0; j < z.dim(); ++j) v.col(j) = vcs::state_coefficients(fam, z, j, modes).coeffs;
  return v;
}

// Entries lo..bound of |diff| / max(1, scale).
double relative_interior(const MatrixXc& diff, const Eigen::MatrixXd& scale, int bound, int lo = 0) {
  double worst = 0.0;
  for (int i = lo; i <= bound; ++i) {
    for (int k = lo; k <= bound; ++k) {
      worst = std::max(worst, std::abs(diff(i, k)) / std::max(1.0, scale(i, k)));
    }
  }
  return worst;
}

Eigen::MatrixXd absprod(const MatrixXc& a, const MatrixXc& b) {
  return a.cwiseAbs() * b.cwiseAbs();
}

// [a, b] - c, scaled by |a||b| + |b||a| + |c|.
double commutator_identity(const MatrixXc& a, const MatrixXc& b, const MatrixXc& c, int bound, int lo = 0) {
  const MatrixXc diff = fock::commutator(a, b) - c;
  const Eigen::MatrixXd scale = absprod(a, b) + absprod(b, a) + c.cwiseAbs();
  return relative_interior(diff, scale, bound, lo);
}

// ½(x y + y x) - z² - c·I.
double casimir_identity(const MatrixXc& x, const MatrixXc& y, const MatrixXc& z, double c, int bound, int lo = 0) {
  const auto dim = x.rows();
  const MatrixXc diff = 0.5 * (x * y + y * x) - z * z - c * MatrixXc::Identity(dim, dim);
  const Eigen::MatrixXd scale = 0.5 * (absprod(x, y) + absprod(y, x)) + absprod(z, z);
  return relative_interior(diff, scale, bound, lo);
}

double product_identity(const MatrixXc& x, const MatrixXc& y, const MatrixXc& z, int bound, int lo = 0) {
  const MatrixXc diff = x * y - z;
  const Eigen::MatrixXd scale = absprod(x, y) + z.cwiseAbs();
  return relative_interior(diff, scale, bound, lo);
}

using Function = std::function<cplx(cplx)>;

cplx ipow(cplx base, int e) {
  cplx out = 1.0;
  const bool inv = e < 0;
  for (int k = 0; k < std::abs(e); ++k) out *= base;
  return inv ? 1.0 / out : out;
}

// (U(g) F)(z) for an arbitrary callable F.
cplx apply_mobius(double kappa, const Matrix2c& g, const Function& f, cplx z) {
  const cplx alpha = g(0, 0);
  const cplx beta = g(0, 1);
  const cplx denom = alpha - std::conj(beta) * z;
  const cplx w = (std::conj(alpha) * z - beta) / denom;
  return ipow(denom, -static_cast<int>(std::lround(2.0 * kappa))) * f(w);
}

Matrix2c rotation(double phi) {
  Matrix2c g = Matrix2c::Zero();
  g(0, 0) = std::polar(1.0, phi);
  g(1, 1) = std::polar(1.0, -phi);
  return g;
}

}  // namespace

VerificationReport check_normalization(const vcs::FamilySpec& fam, std::span<const MatrixVariable> samples, int M,
                                       double tol) {
  double worst = 0.0;
  double max_r = 0.0;
  int max_M = 0;
  for (const MatrixVariable& z : samples) {
    max_r = std::max(max_r, z.radius());
    double total = 0.0;
    try {
      const int m_use = M > 0 ? M : auto_truncation(fam, z, 1e-16);
      max_M = std::max(max_M, m_use);
      for (int j = 0; j < z.dim(); ++j) total += vcs::build_state(fam, z, j, m_use).squared_norm();
    } catch (const vcs::TailBudgetError& e) {
      return tail_failure("normalization", fam, M, tol, e);
    }
    worst = std::max(worst, std::abs(total - 1.0));
  }
  return VerificationReport::make("normalization", fam_name(fam), fam.kappa(), M > 0 ? M : max_M, worst, tol,
                                  {{"samples", samples.size()}, {"max_radius", max_r}, {"auto_M", M <= 0}});
}

VerificationReport check_moment(const vcs::FamilySpec& fam, int m_max, double tol, int nodes) {
  const double r_max = radial_cutoff(fam, m_max, 1e-18);
  const GaussRule rule = radial_rule(nodes, r_max);
  const double tail = std::max(radial_tail_estimate(fam, 0, r_max), radial_tail_estimate(fam, m_max, r_max));
  double worst = 0.0;
  double worst_printed = 0.0;
  nlohmann::json per_mode = nlohmann::json::array();
  for (int m = 0; m <= m_max; ++m) {
    // ∫ λ(r) r^{2m+1} dr / ρ(m), accumulated in log space per node.
    double q = 0.0;
    for (int i = 0; i < nodes; ++i) {
      const double r = rule.nodes[i];
      q += rule.weights[i] * std::exp(fam.log_lambda(r) + (2.0 * m + 1.0) * std::log(r) - fam.log_rho(m));
    }
    double err = std::abs(q - 1.0);
    if (fam.name() == vcs::Family::interpolating) {
      // π ∫ t^m λ(t) dt with t = s², dt = 2s ds.
      double p = 0.0;
      for (int i = 0; i < nodes; ++i) {
        const double s = rule.nodes[i];
        p += rule.weights[i] * std::numbers::pi * fam.printed_moment_density(s * s) *
             std::exp(2.0 * m * std::log(s) - fam.log_rho(m)) * 2.0 * s;
      }
      worst_printed = std::max(worst_printed, std::abs(p - 1.0));
      err = std::max(err, std::abs(p - 1.0));
    }
    per_mode.push_back(err);
    worst = std::max(worst, err);
  }
  nlohmann::json params{{"m_max", m_max}, {"nodes", nodes}, {"r_max", r_max}, {"tail_estimate", tail},
                        {"relative_errors", per_mode}};
  if (fam.name() == vcs::Family::interpolating) params["printed_form_residual"] = worst_printed;
  return VerificationReport::make("moment", fam_name(fam), fam.kappa(), m_max + 1, worst, tol, std::move(params));
}

ResolutionOutcome check_resolution(const vcs::FamilySpec& fam, int n, int M, int M_check, const GridSpec& grid,
                                   double tol, GramCache* cache) {
  if (M_check < 0 || M_check >= M) throw std::invalid_argument("check_resolution: need 0 <= M_check < M");
  if (grid.zeta <= 2 * M_check) {
    throw std::invalid_argument("check_resolution: " + std::to_string(grid.zeta) +
                                " zeta nodes alias modes up to " + std::to_string(M_check) +
                                "; need more than 2*M_check");
  }
  const int modes = M_check + 1;
  const QuadratureGrid qg = QuadratureGrid::build(grid, fam, M_check, n);
  MatrixXc s = assemble_resolution(fam, n, modes, qg, {Execution::parallel, true, cache});
  const MatrixXc diff = s - MatrixXc::Identity(s.rows(), s.cols());
  const MatrixXc off = diff - MatrixXc(diff.diagonal().asDiagonal());
  const double residual = operator_norm(diff);
  const double diag = diff.diagonal().cwiseAbs().maxCoeff();
  const double offdiag = operator_norm(off);
  nlohmann::json params = grid_params(qg);
  params["n"] = n;
  params["M_check"] = M_check;
  params["diagonal_residual"] = diag;
  params["offdiagonal_residual"] = offdiag;
  if (offdiag > tol) {
    params["diagnostic"] = "off-diagonal residual above tolerance: angular grid aliasing or under-resolved quadrature";
  }
  return {VerificationReport::make("resolution", fam_name(fam), fam.kappa(), M, residual, tol, std::move(params)),
          std::move(s)};
}

VerificationReport check_kernel(const vcs::FamilySpec& fam,
                                std::span<const std::pair<MatrixVariable, MatrixVariable>> pairs,
                                const GridSpec& grid, double tol, GramCache* cache, const KernelOptions& opt) {
  if (pairs.empty()) throw std::invalid_argument("check_kernel: no label pairs");
  const int n = pairs.front().first.dim();
  int modes = std::max(2, opt.min_modes);
  for (const auto& [z, zp] : pairs) {
    modes = std::max({modes, auto_truncation(fam, z, 1e-16), auto_truncation(fam, zp, 1e-16)});
  }
  if (grid.zeta <= 2 * (modes - 1)) {
    throw std::invalid_argument("check_kernel: too few zeta nodes for " + std::to_string(modes) + " modes");
  }
  const QuadratureGrid qg = QuadratureGrid::build(grid, fam, modes - 1, n);
  const MatrixXc s = assemble_resolution(fam, n, modes, qg, {Execution::parallel, opt.weighted, cache});

  double worst = 0.0;
  double swap = 0.0;
  for (const auto& [z, zp] : pairs) {
    const MatrixXc v = state_columns(fam, z, modes);
    const MatrixXc vp = state_columns(fam, zp, modes);
    const MatrixXc reproduced = v.adjoint() * s * vp;
    const MatrixXc swapped = vp.adjoint() * s * v;
    const MatrixXc direct = vcs::kernel(fam, z, zp, modes + 16);
    worst = std::max(worst, (reproduced - direct).cwiseAbs().maxCoeff());
    swap = std::max(swap, (reproduced.adjoint() - swapped).cwiseAbs().maxCoeff());
  }
  nlohmann::json params = grid_params(qg);
  params["pairs"] = pairs.size();
  params["modes"] = modes;
  params["swap_hermiticity_residual"] = swap;
  params["weight"] = opt.weighted ? "included" : "omitted";
  if (!opt.weighted) {
    params["note"] = "integrand without W(|Z''|) as printed; not an identity unless W = 1";
  }
  return VerificationReport::make(opt.weighted ? "kernel" : "kernel_unweighted", fam_name(fam), fam.kappa(), modes,
                                  worst, tol, std::move(params));
}

VerificationReport check_isometry(const vcs::FamilySpec& fam, std::span<const StateVector> states,
                                  const GridSpec& grid, double tol, GramCache* cache) {
  if (states.empty()) throw std::invalid_argument("check_isometry: no states");
  const fock::TruncatedSpace space = states.front().space;
  for (const auto& st : states) {
    if (st.space.n != space.n || st.space.M != space.M) {
      throw std::invalid_argument("check_isometry: states live in different spaces");
    }
  }
  if (grid.zeta <= 2 * (space.M - 1)) throw std::invalid_argument("check_isometry: too few zeta nodes");
  const QuadratureGrid qg = QuadratureGrid::build(grid, fam, space.M - 1, space.n);
  const MatrixXc s = assemble_resolution(fam, space.n, space.M, qg, {Execution::parallel, true, cache});
  MatrixXc psi(space.dim(), static_cast<Eigen::Index>(states.size()));
  for (std::size_t i = 0; i < states.size(); ++i) psi.col(static_cast<Eigen::Index>(i)) = states[i].coeffs;
  const MatrixXc l2 = psi.adjoint() * s * psi;
  const MatrixXc plain = psi.adjoint() * psi;
  const double residual = (l2 - plain).cwiseAbs().maxCoeff();
  double norm_only = 0.0;
  for (Eigen::Index i = 0; i < l2.rows(); ++i) norm_only = std::max(norm_only, std::abs(l2(i, i) - plain(i, i)));
  nlohmann::json params = grid_params(qg);
  params["states"] = states.size();
  params["M_check"] = space.M - 1;
  params["norm_residual"] = norm_only;
  return VerificationReport::make("isometry", fam_name(fam), fam.kappa(), space.M, residual, tol, std::move(params));
}

UncertaintyProduct uncertainty_product(const StateVector& psi, const MatrixXc& q, const MatrixXc& p) {
  const VectorXc qv = q * psi.coeffs;
  const VectorXc pv = p * psi.coeffs;
  const double mq = psi.coeffs.dot(qv).real();
  const double mp = psi.coeffs.dot(pv).real();
  UncertaintyProduct u;
  u.dq = std::sqrt(std::max(0.0, qv.squaredNorm() - mq * mq));
  u.dp = std::sqrt(std::max(0.0, pv.squaredNorm() - mp * mp));
  return u;
}

VerificationReport check_uncertainty(std::span<const StateVector> states, const fock::OperatorMatrix& q,
                                     const fock::OperatorMatrix& p, UncertaintyMode mode, double tol) {
  double worst = 0.0;
  double lo = kInf;
  double hi = 0.0;
  for (const auto& st : states) {
    const double prod = uncertainty_product(st, q.matrix, p.matrix).product();
    lo = std::min(lo, prod);
    hi = std::max(hi, prod);
    worst = mode == UncertaintyMode::minimal ? std::max(worst, std::abs(prod - 0.5))
                                             : std::max(worst, 0.5 - prod);
  }
  return VerificationReport::make(mode == UncertaintyMode::minimal ? "uncertainty_minimal" : "uncertainty_bound",
                                  "canonical", 0.0, q.M, std::max(0.0, worst), tol,
                                  {{"states", states.size()}, {"min_product", lo}, {"max_product", hi}});
}

std::string to_string(AlgebraRep rep) {
  switch (rep) {
    case AlgebraRep::oscillator: return "oscillator";
    case AlgebraRep::su11: return "su11";
    case AlgebraRep::interpolating: return "interpolating";
  }
  return "unknown";
}

AlgebraRep parse_algebra_rep(const std::string& s) {
  if (s == "oscillator") return AlgebraRep::oscillator;
  if (s == "su11") return AlgebraRep::su11;
  if (s == "interpolating") return AlgebraRep::interpolating;
  throw std::invalid_argument("unknown algebra representation '" + s + "'");
}

VerificationReport check_algebra(AlgebraRep rep, double kappa, int M, double tol) {
  if (M < 8) throw std::invalid_argument("check_algebra: need M >= 8");
  const int bound = M - 2;
  const MatrixXc id = MatrixXc::Identity(M, M);
  nlohmann::json parts;
  auto record = [&](const char* name, double v) { parts[name] = v; };

  // N_INT as printed: (2κ+m-1)² on every mode, including m = 0.
  MatrixXc n_int = MatrixXc::Zero(M, M);
  for (int m = 0; m < M; ++m) n_int(m, m) = (2.0 * kappa + m - 1.0) * (2.0 * kappa + m - 1.0);
  auto number_relation = [&]() {
    const auto gp = fock::build_ladder(vcs::family_spec(vcs::Family::gilmore_perelomov, kappa).xs(), M);
    const auto bg = fock::build_ladder(vcs::family_spec(vcs::Family::barut_girardello, kappa).xs(), M);
    record("N_GP*N_INT=N_BG", product_identity(gp.number.matrix, n_int, bg.number.matrix, bound));
  };
  nlohmann::json extra = nlohmann::json::object();

  if (rep == AlgebraRep::oscillator) {
    const auto l = fock::build_ladder(vcs::family_spec(vcs::Family::canonical).xs(), M);
    const auto& a = l.lower.matrix;
    const auto& ad = l.raise.matrix;
    const auto& n = l.number.matrix;
    record("[a,a+]=I", commutator_identity(a, ad, id, bound));
    record("[N,a+]=a+", commutator_identity(n, ad, ad, bound));
    record("[N,a]=-a", commutator_identity(n, a, -a, bound));
    const auto qp = fock::quadrature_pair(l.lower, l.raise);
    record("[q,p]=iI", commutator_identity(qp.q.matrix, qp.p.matrix, cplx(0.0, 1.0) * id, bound));
  } else if (rep == AlgebraRep::su11) {
    const auto g = fock::su11_generators(kappa, M);
    const auto& km = g.k_minus.matrix;
    const auto& kp = g.k_plus.matrix;
    const auto& k3 = g.k_3.matrix;
    record("[K3,K+]=K+", commutator_identity(k3, kp, kp, bound));
    record("[K3,K-]=-K-", commutator_identity(k3, km, -km, bound));
    record("[K-,K+]=2K3", commutator_identity(km, kp, 2.0 * k3, bound));
    record("casimir=k(1-k)", casimir_identity(km, kp, k3, kappa * (1.0 - kappa), bound));
    const auto bg = fock::build_ladder(vcs::family_spec(vcs::Family::barut_girardello, kappa).xs(), M);
    record("K+K-=N_BG", product_identity(kp, km, bg.number.matrix, bound));
    number_relation();
  } else {
    const auto g = fock::int_generators(kappa, M);
    const auto& a = g.a_int.matrix;
    const auto& ad = g.a_int_dagger.matrix;
    const auto& nt = g.n_tilde.matrix;
    // a φ_0 = 0 although the printed rule would give (2κ-1) φ_{-1}: identities
    // that pass through a† a are exact from m = 1 only.
    record("[a,a+]=2N~", commutator_identity(a, ad, 2.0 * nt, bound, 1));
    record("[N~,a+]=a+", commutator_identity(nt, ad, ad, bound));
    record("[N~,a]=-a", commutator_identity(nt, a, -a, bound));
    record("casimir=1/4", casimir_identity(a, ad, nt, 0.25, bound, 1));
    record("a+a=N_INT", product_identity(ad, a, n_int, bound, 1));
    const MatrixXc shifted = nt - 0.5 * id;
    record("N_INT=(N~-1/2)^2", product_identity(shifted, shifted, n_int, bound));
    number_relation();
    extra["lowest_mode"] = 1;
    extra["mode0_commutator_deviation"] = std::abs((fock::commutator(a, ad) - 2.0 * nt)(0, 0));
  }
  double worst = 0.0;
  for (const auto& [k, v] : parts.items()) worst = std::max(worst, v.get<double>());
  nlohmann::json params{{"interior_bound", bound}, {"identities", parts}};
  params.update(extra);
  return VerificationReport::make("algebra", to_string(rep), rep == AlgebraRep::oscillator ? 0.0 : kappa, M, worst,
                                  tol, std::move(params));
}

VerificationReport check_eigenrelation(const vcs::FamilySpec& fam, std::span<const MatrixVariable> samples, int M,
                                       double tol) {
  double worst = 0.0;
  int max_M = 0;
  for (const MatrixVariable& z : samples) {
    const int n = z.dim();
    const int m_use = M > 0 ? M : auto_truncation(fam, z, 1e-24);
    max_M = std::max(max_M, m_use);
    const auto a = fock::tensorize(fock::build_ladder(fam.xs(), m_use).lower, n);
    const MatrixXc zi = fock::kron(z.matrix(), {MatrixXc::Identity(m_use, m_use), 1, m_use, m_use - 1}).matrix;
    for (int j = 0; j < n; ++j) {
      StateVector v;
      try {
        v = vcs::build_state(fam, z, j, m_use);
      } catch (const vcs::TailBudgetError& e) {
        return tail_failure("eigenrelation", fam, M, tol, e);
      }
      worst = std::max(worst, (a.matrix * v.coeffs - zi * v.coeffs).norm());
    }
  }
  return VerificationReport::make("eigenrelation", fam_name(fam), fam.kappa(), M > 0 ? M : max_M, worst, tol,
                                  {{"samples", samples.size()}});
}

VerificationReport check_bg_annihilation(double kappa, std::span<const cplx> ws, int M, double tol) {
  const vcs::FamilySpec fam = vcs::family_spec(vcs::Family::barut_girardello, kappa);
  const auto g = fock::su11_generators(kappa, M);
  double worst = 0.0;
  for (const cplx w : ws) {
    const MatrixVariable z = MatrixVariable::scalar(std::abs(w), std::arg(w));
    StateVector v;
    try {
      v = vcs::build_state(fam, z, 0, M);
    } catch (const vcs::TailBudgetError& e) {
      return tail_failure("bg_annihilation", fam, M, tol, e);
    }
    worst = std::max(worst, (g.k_minus.matrix * v.coeffs - w * v.coeffs).norm());
  }
  return VerificationReport::make("bg_annihilation", fam_name(fam), kappa, M, worst, tol, {{"samples", ws.size()}});
}

VerificationReport check_displacement(std::span<const Quaternion> qs, int M, double tol) {
  if (M < 48) throw std::invalid_argument("check_displacement: need M >= 48");
  const vcs::FamilySpec fam = vcs::family_spec(vcs::Family::canonical);
  const auto l = fock::build_ladder(fam.xs(), M);
  const fock::TruncatedSpace space(2, M);
  double worst = 0.0;
  for (const Quaternion& q : qs) {
    fock::OperatorMatrix x = fock::kron(q.matrix(), l.raise);
    x.matrix -= fock::kron(q.matrix().adjoint(), l.lower).matrix;
    const MatrixXc u = fock::group_exponential(x).matrix;
    const MatrixVariable z = label_of(q);
    for (int j = 0; j < 2; ++j) {
      StateVector v;
      try {
        v = vcs::build_state(fam, z, j, M);
      } catch (const vcs::TailBudgetError& e) {
        return tail_failure("displacement", fam, M, tol, e);
      }
      const VectorXc d = u.col(space.index(j, 0)) / std::sqrt(2.0);
      worst = std::max(worst, (d - v.coeffs).norm());
    }
  }
  return VerificationReport::make("displacement", "canonical", 0.0, M, worst, tol, {{"samples", qs.size()}});
}

VerificationReport check_bch(std::span<const Quaternion> qs, int M, double tol, int m_test) {
  if (M < 48) throw std::invalid_argument("check_bch: need M >= 48");
  const auto l = fock::build_ladder(vcs::family_spec(vcs::Family::canonical).xs(), M);
  const fock::TruncatedSpace space(2, M);
  const int dim = space.dim();
  double central = 0.0;
  double factor = 0.0;
  for (const Quaternion& q : qs) {
    const double r2 = q.radius() * q.radius();
    const MatrixXc a = fock::kron(q.matrix(), l.raise).matrix;
    const MatrixXc b = -fock::kron(q.matrix().adjoint(), l.lower).matrix;
    const MatrixXc c = fock::commutator(a, b) - r2 * MatrixXc::Identity(dim, dim);
    central = std::max(central, fock::interior_max_abs(c, space, M - 2));

    const MatrixXc lhs = fock::group_exponential({a + b, 2, M, M - 2}).matrix;
    const MatrixXc ea = fock::matrix_exponential(a);
    const MatrixXc eb = fock::matrix_exponential(b);
    for (int j = 0; j < 2; ++j) {
      for (int m = 0; m <= m_test; ++m) {
        const Eigen::Index col = space.index(j, m);
        const VectorXc rhs = std::exp(-0.5 * r2) * (ea * eb.col(col));
        factor = std::max(factor, (lhs.col(col) - rhs).norm());
      }
    }
  }
  return VerificationReport::make("bch", "canonical", 0.0, M, std::max(central, factor), tol,
                                  {{"samples", qs.size()},
                                   {"central_commutator_residual", central},
                                   {"factorization_residual", factor},
                                   {"m_test", m_test}});
}

VerificationReport check_su11_exponential(double kappa, std::span<const Quaternion> ws, int M, double tol) {
  if (M < 96) throw std::invalid_argument("check_su11_exponential: need M >= 96");
  const vcs::FamilySpec fam = vcs::family_spec(vcs::Family::gilmore_perelomov, kappa);
  const auto g = fock::su11_generators(kappa, M);
  const fock::TruncatedSpace space(2, M);
  double worst = 0.0;
  double max_q = 0.0;
  for (const Quaternion& w : ws) {
    fock::OperatorMatrix x = fock::kron(w.matrix(), g.k_plus);
    x.matrix -= fock::kron(w.matrix().adjoint(), g.k_minus).matrix;
    const MatrixXc u = fock::group_exponential(x).matrix;
    const Quaternion q = vcs::disentangle_map(w);
    max_q = std::max(max_q, q.radius());
    const MatrixVariable z = label_of(q);
    for (int j = 0; j < 2; ++j) {
      StateVector v;
      try {
        v = vcs::build_state(fam, z, j, M);
      } catch (const vcs::TailBudgetError& e) {
        return tail_failure("su11_exponential", fam, M, tol, e);
      }
      worst = std::max(worst, (u.col(space.index(j, 0)) / std::sqrt(2.0) - v.coeffs).norm());
    }
  }
  // The disentangled label must stay in the open unit disc.
  if (!(max_q < 1.0)) worst = kInf;
  return VerificationReport::make("su11_exponential", fam_name(fam), kappa, M, worst, tol,
                                  {{"samples", ws.size()}, {"max_disentangled_radius", max_q}});
}

VerificationReport check_mobius(double kappa, std::span<const cplx> z0s, std::span<const cplx> points, double tol) {
  namespace sf = vcskit::specfun;
  // Composition on a fixed test function f = Σ f_m u_m.
  std::vector<cplx> f;
  for (int m = 0; m < 8; ++m) f.emplace_back(1.0 / (m + 1.0), 0.5 * std::sin(m + 1.0));
  const Function base = [&](cplx z) { return vcs::evaluate_monomial_expansion(kappa, f, z); };
  double composition = 0.0;
  for (std::size_t i = 0; i + 1 < z0s.size(); ++i) {
    const Matrix2c g1 = rotation(0.3 * (i + 1.0)) * vcs::su11_boost(z0s[i]);
    const Matrix2c g2 = vcs::su11_boost(z0s[i + 1]) * rotation(-0.7 * (i + 1.0));
    const Matrix2c g12 = g1 * g2;
    for (const cplx z : points) {
      const Function inner = [&](cplx w) { return apply_mobius(kappa, g2, base, w); };
      const cplx lhs = apply_mobius(kappa, g1, inner, z);
      const cplx rhs = vcs::mobius_action(kappa, g12, f, z);
      composition = std::max(composition, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
  }
  // U(g_{z0}) φ_0 against (1-|z0|²)^κ Σ [(2κ)_m/m!]^{1/2} c^m u_m(z), c = z0 or conj(z0).
  double res_direct = 0.0;
  double res_conj = 0.0;
  const std::vector<cplx> vacuum{1.0};
  for (const cplx z0 : z0s) {
    const Matrix2c g = vcs::su11_boost(z0);
    const double pref = std::pow(1.0 - std::norm(z0), kappa);
    for (const cplx z : points) {
      const cplx value = vcs::mobius_action(kappa, g, vacuum, z);
      auto series = [&](cplx c) {
        std::vector<cplx> coeffs;
        cplx power = 1.0;
        for (int m = 0; m < 4000; ++m) {
          const double amp = std::exp(0.5 * (sf::log_pochhammer(2.0 * kappa, m) - sf::log_gamma(m + 1.0)));
          coeffs.push_back(pref * amp * power);
          if (std::abs(coeffs.back()) * amp * std::pow(std::abs(z), m) < 1e-18 && m > 8) break;
          power *= c;
        }
        return vcs::evaluate_monomial_expansion(kappa, coeffs, z);
      };
      const double scale = std::max(1.0, std::abs(value));
      res_direct = std::max(res_direct, std::abs(value - series(z0)) / scale);
      res_conj = std::max(res_conj, std::abs(value - series(std::conj(z0))) / scale);
    }
  }
  const bool conj_matches = res_conj <= res_direct;
  return VerificationReport::make("mobius", "gilmore_perelomov", kappa, 0,
                                  std::max(composition, std::min(res_conj, res_direct)), tol,
                                  {{"composition_residual", composition},
                                   {"series_residual_z0", res_direct},
                                   {"series_residual_conj_z0", res_conj},
                                   {"matching_convention", conj_matches ? "conj(z0)" : "z0"}});
}

VerificationReport check_holomorphic_image(std::span<const StateVector> states, std::span<const Quaternion> qs,
                                           double tol) {
  double worst = 0.0;
  int M = 0;
  for (const auto& psi : states) {
    M = psi.space.M;
    for (const Quaternion& q : qs) {
      vcs::CoherentImage img;
      try {
        img = vcs::coherent_image(psi, q);
      } catch (const vcs::TailBudgetError& e) {
        return tail_failure("holomorphic_image", vcs::family_spec(vcs::Family::canonical), M, tol, e);
      }
      worst = std::max(worst, (img.direct - img.projector_form).cwiseAbs().maxCoeff());
    }
  }
  return VerificationReport::make("holomorphic_image", "canonical", 0.0, M, worst, tol,
                                  {{"states", states.size()}, {"labels", qs.size()}});
}

std::vector<VerificationReport> check_grid_convergence(const std::vector<VerificationReport>& base,
                                                       const std::vector<VerificationReport>& doubled) {
  if (base.size() != doubled.size()) throw std::invalid_argument("check_grid_convergence: report lists differ");
  std::vector<VerificationReport> out;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const auto& b = base[i];
    const auto& d = doubled[i];
    if (b.check != d.check || b.family != d.family) {
      throw std::invalid_argument("check_grid_convergence: report lists are not aligned");
    }
    if (!b.pass) continue;
    out.push_back(VerificationReport::make("grid_convergence", b.family, b.kappa, b.M, std::abs(d.residual - b.residual),
                                           b.tol,
                                           {{"of", b.check},
                                            {"base_residual", b.residual},
                                            {"doubled_residual", std::isfinite(d.residual) ? nlohmann::json(d.residual)
                                                                                           : nlohmann::json(nullptr)}}));
  }
  return out;
}

}  // namespace vcskit::verify
