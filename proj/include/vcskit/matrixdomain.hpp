#pragma once

// Matrix-valued labels Z = A(r) exp(i zeta Theta(k)) and their quaternionic
// specialisation, with Theta hermitian, Theta^2 = I, [A, Theta] = 0 and A
// normal.

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include <array>
#include <complex>
#include <stdexcept>
#include <vector>

namespace vcskit {

using cplx = std::complex<double>;
using Matrix2c = Eigen::Matrix2cd;
using Vector2c = Eigen::Vector2cd;
using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

/// Largest singular value.
double operator_norm(const MatrixXc& m);

}  // namespace vcskit

namespace vcskit::matrixdomain {

class AxiomViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// r in [0, ∞), theta in [0, π] (values outside are accepted and wrap
/// through the trigonometric map), phi in [0, π], psi in [0, 2π).
struct PolarQuaternion {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;
  double psi = 0.0;
};

/// x0 σ0 + i (x1 σ1 - x2 σ2 + x3 σ3) as a 2×2 complex matrix.
class Quaternion {
 public:
  Quaternion() : Quaternion(0.0, 0.0, 0.0, 0.0) {}
  Quaternion(double x0, double x1, double x2, double x3);

  const std::array<double, 4>& components() const { return x_; }
  const Matrix2c& matrix() const { return matrix_; }

  /// r = sqrt(det) = Euclidean length of (x0, x1, x2, x3).
  double radius() const;
  /// Length of the vector part (x1, x2, x3).
  double vector_norm() const;
  PolarQuaternion to_polar() const;

  Quaternion scaled(double s) const;
  Quaternion conjugate() const { return {x_[0], -x_[1], -x_[2], -x_[3]}; }

 private:
  std::array<double, 4> x_;
  Matrix2c matrix_;
};

/// σ(n̂) = [[cos φ, sin φ e^{iψ}], [sin φ e^{-iψ}, -cos φ]].
Matrix2c sigma_n(double phi, double psi);

Quaternion quaternion_from_polar(const PolarQuaternion& p);

struct AxiomResiduals {
  double hermiticity = 0.0;  // ‖Θ - Θ†‖
  double involution = 0.0;   // ‖Θ² - I‖
  double commutator = 0.0;   // ‖[A, Θ]‖
  double normality = 0.0;    // ‖A A† - A† A‖
  double max() const;
  bool pass(double tol = 1e-10) const { return max() <= tol; }
};

/// Operator-norm residuals of the four domain axioms. Throws
/// std::invalid_argument on non-square or mismatched inputs.
AxiomResiduals check_domain_axioms(const MatrixXc& a, const MatrixXc& theta);

/// A value of the label Z = A e^{i ζ Θ}, stored as evaluated matrices.
/// Construction validates the axioms to 1e-10 and throws AxiomViolation.
class MatrixVariable {
 public:
  MatrixVariable(MatrixXc a, MatrixXc theta, double zeta, std::vector<double> measure_point = {});

  static MatrixVariable from_quaternion(const PolarQuaternion& p);
  /// n = 1 label z = r e^{iζ}.
  static MatrixVariable scalar(double r, double zeta);

  int dim() const { return static_cast<int>(a_.rows()); }
  const MatrixXc& a() const { return a_; }
  const MatrixXc& theta() const { return theta_; }
  double zeta() const { return zeta_; }
  /// (r, k...) coordinates of the point in R × K this label came from.
  const std::vector<double>& measure_point() const { return point_; }

  /// Z = A (cos ζ + i Θ sin ζ).
  const MatrixXc& matrix() const { return z_; }
  /// Spectral radius of |A|; equals r for quaternions.
  double radius() const;
  /// Same Θ and ζ with A replaced by s·A.
  MatrixVariable scaled(double s) const;

 private:
  MatrixXc a_;
  MatrixXc theta_;
  double zeta_;
  std::vector<double> point_;
  MatrixXc z_;
};

/// Z^m = A^m (cos mζ + i Θ sin mζ).
MatrixXc variable_power(const MatrixVariable& z, int m);

/// Positive part [Z Z†]^{1/2}.
MatrixXc modulus(const MatrixXc& z);
inline MatrixXc modulus(const MatrixVariable& z) { return modulus(z.matrix()); }

struct QuaternionDiagonalization {
  Matrix2c u;  // columns χ⁺, χ⁻
  cplx z;      // eigenvalue of χ⁺, Im z >= 0
  Matrix2c projector_plus() const;
  Matrix2c projector_minus() const;
};

/// q = u diag(z, z̄) u†, from the eigen-decomposition of the hermitian
/// generator (q - q†)/(2i), which commutes with q. A vanishing vector part
/// gives u = I.
QuaternionDiagonalization diagonalize_quaternion(const Quaternion& q);

void to_json(nlohmann::json& j, const Quaternion& q);
void from_json(const nlohmann::json& j, Quaternion& q);
void to_json(nlohmann::json& j, const PolarQuaternion& p);
void from_json(const nlohmann::json& j, PolarQuaternion& p);

}  // namespace vcskit::matrixdomain
