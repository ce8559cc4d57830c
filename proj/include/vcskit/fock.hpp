#pragma once

// Truncated Fock space C^n ⊗ C^M and the operators that act on it.
//
// Basis vectors χ^j ⊗ φ_m are ordered lexicographically with j outer:
// index = j * M + m. Raising operators lose their top row under
// truncation, so identities involving a product of one raising and one
// lowering operator are only exact on modes m <= M - 2 ("interior").

#include "vcskit/matrixdomain.hpp"

#include <functional>
#include <string>

namespace vcskit::fock {

struct TruncatedSpace {
  int n = 1;  // internal dimension
  int M = 2;  // Fock modes 0 .. M-1

  TruncatedSpace() = default;
  TruncatedSpace(int n_, int M_);
  int dim() const { return n * M; }
  int index(int j, int m) const { return j * M + m; }
};

/// x_m for m >= 1 and ρ(m) = ρ(0) x_1 ... x_m.
class XSequence {
 public:
  using Evaluator = std::function<double(int)>;

  XSequence(std::string name, Evaluator x, double rho0 = 1.0, Evaluator log_rho = {});

  const std::string& name() const { return name_; }
  double x(int m) const;
  double rho0() const { return rho0_; }
  double log_rho(int m) const;
  double rho(int m) const;

 private:
  std::string name_;
  Evaluator x_;
  double rho0_;
  Evaluator log_rho_;
};

struct OperatorMatrix {
  MatrixXc matrix;
  int n = 1;
  int M = 0;
  int interior_valid_up_to = 0;

  TruncatedSpace space() const { return {n, M}; }
};

struct StateVector {
  TruncatedSpace space;
  VectorXc coeffs;

  StateVector() = default;
  explicit StateVector(TruncatedSpace s) : space(s), coeffs(VectorXc::Zero(s.dim())) {}
  StateVector(TruncatedSpace s, VectorXc c);

  cplx operator()(int j, int m) const { return coeffs(space.index(j, m)); }
  cplx& operator()(int j, int m) { return coeffs(space.index(j, m)); }
  double squared_norm() const { return coeffs.squaredNorm(); }
  /// Squared norm of the χ^j component.
  double component_squared_norm(int j) const;
  /// χ^j ⊗ φ_m.
  static StateVector basis(TruncatedSpace s, int j, int m);
};

struct Ladder {
  OperatorMatrix lower;   // a
  OperatorMatrix raise;   // a†
  OperatorMatrix number;  // N' = a† a
};

/// a φ_m = √x_m φ_{m-1}, a† its adjoint, N' = a† a.
Ladder build_ladder(const XSequence& xs, int M);

/// I_n ⊗ op.
OperatorMatrix tensorize(const OperatorMatrix& op, int n);
/// left ⊗ op for an n×n matrix acting on the internal factor.
OperatorMatrix kron(const MatrixXc& left, const OperatorMatrix& op);

struct QuadraturePair {
  OperatorMatrix q;  // (a + a†)/√2
  OperatorMatrix p;  // (a - a†)/(√2 i)
};
QuadraturePair quadrature_pair(const OperatorMatrix& a, const OperatorMatrix& a_dagger);

/// True for κ in {1/2, 1, 3/2, ...} with κ >= 1.
bool is_discrete_series_label(double kappa);

struct Su11Generators {
  OperatorMatrix k_minus;  // √(m(2κ+m-1)) φ_{m-1}
  OperatorMatrix k_plus;
  OperatorMatrix k_3;      // (κ+m) φ_m
};
Su11Generators su11_generators(double kappa, int M);

struct IntGenerators {
  OperatorMatrix a_int;         // (2κ+m-1) φ_{m-1}
  OperatorMatrix a_int_dagger;
  OperatorMatrix n_tilde;       // (2κ+m-1/2) φ_m
};
IntGenerators int_generators(double kappa, int M);

MatrixXc commutator(const MatrixXc& a, const MatrixXc& b);

/// Largest |entry| of `m` over rows and columns whose mode index is <= bound.
double interior_max_abs(const MatrixXc& m, TruncatedSpace space, int bound);

/// Rejects non-anti-hermitian input.
class NotAntiHermitian : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// e^{iϑ} e^X for anti-hermitian X via the eigen-decomposition of -iX.
OperatorMatrix group_exponential(const OperatorMatrix& x, double phase = 0.0);

/// General e^X by Padé scaling and squaring.
MatrixXc matrix_exponential(const MatrixXc& x);

}  // namespace vcskit::fock
