#include "vcskit/states.hpp"

#include "vcskit/specfun.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <limits>

namespace vcskit::vcs {

namespace sf = vcskit::specfun;
using fock::TruncatedSpace;

TailBudgetError::TailBudgetError(int required_M, int given_M, double radius)
    : std::runtime_error("truncation M=" + std::to_string(given_M) + " too small for |Z|=" +
                         std::to_string(radius) + "; tail budget needs M >= " +
                         std::to_string(required_M)),
      required_(required_M),
      given_(given_M),
      radius_(radius) {}

namespace {

Eigen::VectorXd singular_values(const MatrixXc& a) {
  Eigen::JacobiSVD<MatrixXc> svd(a);
  return svd.singularValues();
}

double log_sum_exp(const std::vector<double>& v) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double x : v) hi = std::max(hi, x);
  if (!std::isfinite(hi)) return hi;
  double s = 0.0;
  for (double x : v) s += std::exp(x - hi);
  return hi + std::log(s);
}

// z^m / √m! without overflow.
cplx scaled_monomial(cplx w, int m) {
  if (m == 0) return 1.0;
  const double aw = std::abs(w);
  if (aw == 0.0) return 0.0;
  return std::polar(std::exp(m * std::log(aw) - 0.5 * sf::log_gamma(m + 1.0)), m * std::arg(w));
}

}  // namespace

double log_normalization(const FamilySpec& fam, const MatrixVariable& z) {
  const Eigen::VectorXd s = singular_values(z.a());
  std::vector<double> logs;
  for (Eigen::Index i = 0; i < s.size(); ++i) logs.push_back(fam.log_scalar_normalization(s(i)));
  return log_sum_exp(logs);
}

StateVector state_coefficients(const FamilySpec& fam, const MatrixVariable& z, int j, int M) {
  const int n = z.dim();
  if (j < 0 || j >= n) throw std::out_of_range("state_coefficients: component index out of range");
  const TruncatedSpace space(n, M);
  StateVector state(space);
  const double log_n = log_normalization(fam, z);
  const double rad = z.radius();
  if (rad == 0.0) {
    const double c0 = std::exp(-0.5 * (fam.log_rho(0) + log_n));
    state(j, 0) = c0;
    return state;
  }
  const MatrixVariable unit = z.scaled(1.0 / rad);
  const double log_rad = std::log(rad);
  for (int m = 0; m < M; ++m) {
    const double f = std::exp(m * log_rad - 0.5 * fam.log_rho(m) - 0.5 * log_n);
    if (f == 0.0) continue;
    const MatrixXc p = matrixdomain::variable_power(unit, m);
    for (int jj = 0; jj < n; ++jj) state(jj, m) = f * p(jj, j);
  }
  return state;
}

StateVector build_state(const FamilySpec& fam, const MatrixVariable& z, int j, int M,
                        double rel_tail) {
  const Eigen::VectorXd s = singular_values(z.a());
  int required = 2;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    required = std::max(required, fam.required_truncation(s(i), rel_tail));
  }
  if (M < required) throw TailBudgetError(required, M, z.radius());
  return state_coefficients(fam, z, j, M);
}

StateVector superpose(const std::vector<StateVector>& states, std::span<const cplx> c) {
  if (states.empty() || states.size() != c.size()) {
    throw std::invalid_argument("superpose: need one coefficient per state");
  }
  StateVector out(states.front().space);
  for (std::size_t i = 0; i < states.size(); ++i) out.coeffs += c[i] * states[i].coeffs;
  return out;
}

MatrixXc kernel(const FamilySpec& fam, const MatrixVariable& z, const MatrixVariable& zp, int M) {
  const int n = z.dim();
  if (zp.dim() != n) throw std::invalid_argument("kernel: label dimensions differ");
  std::vector<StateVector> left;
  std::vector<StateVector> right;
  for (int j = 0; j < n; ++j) {
    left.push_back(build_state(fam, z, j, M));
    right.push_back(build_state(fam, zp, j, M));
  }
  MatrixXc k(n, n);
  for (int j = 0; j < n; ++j) {
    for (int l = 0; l < n; ++l) k(j, l) = left[j].coeffs.dot(right[l].coeffs);
  }
  return k;
}

MatrixXc kernel_series(const FamilySpec& fam, const MatrixVariable& z, const MatrixVariable& zp,
                       int M) {
  const int n = z.dim();
  if (zp.dim() != n) throw std::invalid_argument("kernel_series: label dimensions differ");
  const double log_norm = -0.5 * (log_normalization(fam, z) + log_normalization(fam, zp));
  const double s = z.radius();
  const double sp = zp.radius();
  MatrixXc k = MatrixXc::Identity(n, n) * std::exp(log_norm - fam.log_rho(0));
  if (s == 0.0 || sp == 0.0) return k;
  const MatrixVariable u = z.scaled(1.0 / s);
  const MatrixVariable up = zp.scaled(1.0 / sp);
  const double log_ss = std::log(s) + std::log(sp);
  for (int m = 1; m < M; ++m) {
    const double f = std::exp(m * log_ss - fam.log_rho(m) + log_norm);
    k += f * matrixdomain::variable_power(u, m).adjoint() * matrixdomain::variable_power(up, m);
  }
  return k;
}

MinimalUncertaintyPair minimal_uncertainty_pair(const Quaternion& q, int M) {
  const FamilySpec canonical = family_spec(Family::canonical);
  const double r = q.radius();
  const int required = canonical.required_truncation(r);
  if (M < required) throw TailBudgetError(required, M, r);

  MinimalUncertaintyPair pair;
  pair.diag = matrixdomain::diagonalize_quaternion(q);
  const TruncatedSpace space(2, M);
  pair.plus = StateVector(space);
  pair.minus = StateVector(space);
  const cplx z = pair.diag.z;
  const double damp = std::exp(-0.5 * r * r);
  for (int m = 0; m < M; ++m) {
    const cplx cp = damp * scaled_monomial(z, m);
    const cplx cm = damp * scaled_monomial(std::conj(z), m);
    for (int j = 0; j < 2; ++j) {
      pair.plus(j, m) = cp * pair.diag.u(j, 0);
      pair.minus(j, m) = cm * pair.diag.u(j, 1);
    }
  }
  return pair;
}

Quaternion disentangle_map(const Quaternion& w) {
  const double r = w.radius();
  if (r == 0.0) return Quaternion();
  return w.scaled(std::tanh(r) / r);
}

cplx evaluate_monomial_expansion(double kappa, std::span<const cplx> f, cplx z) {
  cplx sum = 0.0;
  cplx power = 1.0;
  for (std::size_t m = 0; m < f.size(); ++m) {
    const int mm = static_cast<int>(m);
    const double norm = std::exp(0.5 * (sf::log_pochhammer(2.0 * kappa, mm) - sf::log_gamma(mm + 1.0)));
    sum += f[m] * norm * power;
    power *= z;
  }
  return sum;
}

cplx mobius_action(double kappa, const Matrix2c& g, std::span<const cplx> f, cplx z) {
  const cplx alpha = g(0, 0);
  const cplx beta = g(0, 1);
  const double form = std::abs(g(1, 0) - std::conj(beta)) + std::abs(g(1, 1) - std::conj(alpha));
  const double det = std::norm(alpha) - std::norm(beta);
  if (form > 1e-10 || std::abs(det - 1.0) > 1e-10) {
    throw std::invalid_argument("mobius_action: g is not of the SU(1,1) form [[a, b], [b*, a*]] with det 1");
  }
  if (!(std::abs(z) < 1.0)) throw std::domain_error("mobius_action: |z| must be < 1");
  const cplx denom = alpha - std::conj(beta) * z;
  const cplx w = (std::conj(alpha) * z - beta) / denom;
  if (!(std::abs(w) < 1.0)) throw std::logic_error("mobius_action: image left the unit disc");
  return std::pow(denom, -2.0 * kappa) * evaluate_monomial_expansion(kappa, f, w);
}

Matrix2c su11_boost(cplx z) {
  const double r2 = std::norm(z);
  if (!(r2 < 1.0)) throw std::domain_error("su11_boost: |z| must be < 1");
  const double s = 1.0 / std::sqrt(1.0 - r2);
  Matrix2c g;
  g << s, s * z, s * std::conj(z), s;
  return g;
}

CoherentImage coherent_image(const StateVector& psi, const Quaternion& q) {
  if (psi.space.n != 2) throw std::invalid_argument("coherent_image: state must live in C^2 ⊗ C^M");
  const int M = psi.space.M;
  const FamilySpec canonical = family_spec(Family::canonical);
  const MatrixVariable label = MatrixVariable::from_quaternion(q.to_polar());

  CoherentImage img;
  for (int j = 0; j < 2; ++j) {
    img.direct(j) = build_state(canonical, label, j, M).coeffs.dot(psi.coeffs);
  }

  const auto d = matrixdomain::diagonalize_quaternion(q);
  Vector2c f_z = Vector2c::Zero();
  Vector2c f_zbar = Vector2c::Zero();
  for (int m = 0; m < M; ++m) {
    const Vector2c psi_m(psi(0, m), psi(1, m));
    f_z += scaled_monomial(d.z, m) * psi_m;
    f_zbar += scaled_monomial(std::conj(d.z), m) * psi_m;
  }
  const double r = q.radius();
  img.projector_form = std::exp(-0.5 * r * r) / std::sqrt(2.0) *
                       (d.projector_plus() * f_zbar + d.projector_minus() * f_z);
  return img;
}

nlohmann::json state_to_json(const FamilySpec& fam, const nlohmann::json& label, int j,
                             const StateVector& state) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (int jj = 0; jj < state.space.n; ++jj) {
    for (int m = 0; m < state.space.M; ++m) {
      const cplx c = state(jj, m);
      if (c != cplx(0.0)) coeffs.push_back({jj + 1, m, c.real(), c.imag()});
    }
  }
  return nlohmann::json{{"family", to_string(fam.name())},
                        {"kappa", fam.kappa()},
                        {"M", state.space.M},
                        {"n", state.space.n},
                        {"j", j + 1},
                        {"label", label},
                        {"coefficients", std::move(coeffs)}};
}

}  // namespace vcskit::vcs
