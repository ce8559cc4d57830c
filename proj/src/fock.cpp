#include "vcskit/fock.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace vcskit::fock {

TruncatedSpace::TruncatedSpace(int n_, int M_) : n(n_), M(M_) {
  if (n < 1) throw std::invalid_argument("TruncatedSpace: n must be >= 1");
  if (M < 2) throw std::invalid_argument("TruncatedSpace: M must be >= 2");
}

XSequence::XSequence(std::string name, Evaluator x, double rho0, Evaluator log_rho)
    : name_(std::move(name)), x_(std::move(x)), rho0_(rho0), log_rho_(std::move(log_rho)) {
  if (!(rho0_ > 0.0)) throw std::invalid_argument("XSequence: rho(0) must be positive");
}

double XSequence::x(int m) const {
  if (m < 1) throw std::invalid_argument("XSequence: x_m defined for m >= 1");
  return x_(m);
}

double XSequence::log_rho(int m) const {
  if (m < 0) throw std::invalid_argument("XSequence: rho(m) defined for m >= 0");
  if (log_rho_) return log_rho_(m);
  double s = std::log(rho0_);
  for (int k = 1; k <= m; ++k) s += std::log(x_(k));
  return s;
}

double XSequence::rho(int m) const { return std::exp(log_rho(m)); }

StateVector::StateVector(TruncatedSpace s, VectorXc c) : space(s), coeffs(std::move(c)) {
  if (coeffs.size() != space.dim()) throw std::invalid_argument("StateVector: size mismatch");
}

double StateVector::component_squared_norm(int j) const {
  return coeffs.segment(space.index(j, 0), space.M).squaredNorm();
}

StateVector StateVector::basis(TruncatedSpace s, int j, int m) {
  StateVector v(s);
  v(j, m) = 1.0;
  return v;
}

Ladder build_ladder(const XSequence& xs, int M) {
  const TruncatedSpace space(1, M);
  MatrixXc a = MatrixXc::Zero(M, M);
  for (int m = 1; m < M; ++m) {
    const double xm = xs.x(m);
    if (!(xm > 0.0)) throw std::invalid_argument("build_ladder: x_m must be positive");
    a(m - 1, m) = std::sqrt(xm);
  }
  Ladder l;
  l.lower = {a, 1, M, M - 1};
  l.raise = {a.adjoint(), 1, M, M - 2};
  l.number = {l.raise.matrix * a, 1, M, M - 2};
  return l;
}

OperatorMatrix tensorize(const OperatorMatrix& op, int n) {
  return kron(MatrixXc::Identity(n, n), op);
}

OperatorMatrix kron(const MatrixXc& left, const OperatorMatrix& op) {
  if (op.n != 1) throw std::invalid_argument("kron: operator is already tensored");
  const auto n = left.rows();
  const auto M = op.matrix.rows();
  MatrixXc out = MatrixXc::Zero(n * M, n * M);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < n; ++k) {
      if (left(i, k) != cplx(0.0)) out.block(i * M, k * M, M, M) = left(i, k) * op.matrix;
    }
  }
  return {std::move(out), static_cast<int>(n), op.M, op.interior_valid_up_to};
}

QuadraturePair quadrature_pair(const OperatorMatrix& a, const OperatorMatrix& a_dagger) {
  const double s = 1.0 / std::sqrt(2.0);
  const int bound = std::min(a.interior_valid_up_to, a_dagger.interior_valid_up_to);
  MatrixXc q = s * (a.matrix + a_dagger.matrix);
  MatrixXc p = (a.matrix - a_dagger.matrix) * cplx(0.0, -s);
  // Symmetrise so hermiticity holds to the last bit.
  q = 0.5 * (q + q.adjoint()).eval();
  p = 0.5 * (p + p.adjoint()).eval();
  return {{std::move(q), a.n, a.M, bound}, {std::move(p), a.n, a.M, bound}};
}

bool is_discrete_series_label(double kappa) {
  return kappa >= 1.0 && std::floor(2.0 * kappa) == 2.0 * kappa;
}

namespace {
void warn_if_continuous(double kappa) {
  if (!(kappa > 0.5)) throw std::invalid_argument("SU(1,1) generators need kappa > 1/2");
  if (!is_discrete_series_label(kappa)) {
    std::clog << "vcskit: warning: kappa=" << kappa
              << " is not in {1, 3/2, 2, ...}; building generators anyway\n";
  }
}
}  // namespace

Su11Generators su11_generators(double kappa, int M) {
  warn_if_continuous(kappa);
  const TruncatedSpace space(1, M);
  MatrixXc km = MatrixXc::Zero(M, M);
  MatrixXc k3 = MatrixXc::Zero(M, M);
  for (int m = 0; m < M; ++m) {
    k3(m, m) = kappa + m;
    if (m >= 1) km(m - 1, m) = std::sqrt(m * (2.0 * kappa + m - 1.0));
  }
  Su11Generators g;
  g.k_minus = {km, 1, M, M - 1};
  g.k_plus = {km.adjoint(), 1, M, M - 2};
  g.k_3 = {std::move(k3), 1, M, M - 1};
  return g;
}

IntGenerators int_generators(double kappa, int M) {
  warn_if_continuous(kappa);
  const TruncatedSpace space(1, M);
  MatrixXc a = MatrixXc::Zero(M, M);
  MatrixXc nt = MatrixXc::Zero(M, M);
  for (int m = 0; m < M; ++m) {
    nt(m, m) = 2.0 * kappa + m - 0.5;
    if (m >= 1) a(m - 1, m) = 2.0 * kappa + m - 1.0;
  }
  IntGenerators g;
  g.a_int = {a, 1, M, M - 1};
  g.a_int_dagger = {a.adjoint(), 1, M, M - 2};
  g.n_tilde = {std::move(nt), 1, M, M - 1};
  return g;
}

MatrixXc commutator(const MatrixXc& a, const MatrixXc& b) { return a * b - b * a; }

double interior_max_abs(const MatrixXc& m, TruncatedSpace space, int bound) {
  double worst = 0.0;
  for (int j = 0; j < space.n; ++j) {
    for (int k = 0; k < space.n; ++k) {
      const auto block = m.block(space.index(j, 0), space.index(k, 0), bound + 1, bound + 1);
      worst = std::max(worst, block.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

OperatorMatrix group_exponential(const OperatorMatrix& x, double phase) {
  const MatrixXc& X = x.matrix;
  const double scale = std::max(1.0, X.cwiseAbs().maxCoeff());
  const double skew = (X + X.adjoint()).cwiseAbs().maxCoeff();
  if (skew > 1e-10 * scale) {
    throw NotAntiHermitian("group_exponential: generator is not anti-hermitian (residual " +
                           std::to_string(skew) + ")");
  }
  // X = i H with H hermitian.
  MatrixXc h = X * cplx(0.0, -1.0);
  h = 0.5 * (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(h);
  VectorXc phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::polar(1.0, es.eigenvalues()(i) + phase);
  }
  MatrixXc u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  return {std::move(u), x.n, x.M, x.interior_valid_up_to};
}

MatrixXc matrix_exponential(const MatrixXc& x) { return x.exp(); }

}  // namespace vcskit::fock
