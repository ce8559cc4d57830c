#include "vcskit/matrixdomain.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vcskit {

double operator_norm(const MatrixXc& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<MatrixXc> svd(m);
  return svd.singularValues()(0);
}

}  // namespace vcskit

namespace vcskit::matrixdomain {

namespace {
constexpr cplx kI{0.0, 1.0};
}

Quaternion::Quaternion(double x0, double x1, double x2, double x3) : x_{x0, x1, x2, x3} {
  matrix_ << cplx(x0, x3), cplx(-x2, x1),
             cplx(x2, x1), cplx(x0, -x3);
}

double Quaternion::radius() const {
  return std::hypot(std::hypot(x_[0], x_[1]), std::hypot(x_[2], x_[3]));
}

double Quaternion::vector_norm() const { return std::hypot(x_[1], std::hypot(x_[2], x_[3])); }

PolarQuaternion Quaternion::to_polar() const {
  PolarQuaternion p;
  p.r = radius();
  p.theta = std::atan2(vector_norm(), x_[0]);
  p.phi = std::atan2(std::hypot(x_[1], x_[2]), x_[3]);
  p.psi = std::atan2(x_[2], x_[1]);
  if (p.psi < 0.0) p.psi += 2.0 * std::numbers::pi;
  return p;
}

Quaternion Quaternion::scaled(double s) const {
  return {s * x_[0], s * x_[1], s * x_[2], s * x_[3]};
}

Matrix2c sigma_n(double phi, double psi) {
  Matrix2c s;
  const cplx e = std::polar(1.0, psi);
  s << std::cos(phi), std::sin(phi) * e,
       std::sin(phi) * std::conj(e), -std::cos(phi);
  return s;
}

Quaternion quaternion_from_polar(const PolarQuaternion& p) {
  const double st = std::sin(p.theta);
  return {p.r * std::cos(p.theta),
          p.r * st * std::sin(p.phi) * std::cos(p.psi),
          p.r * st * std::sin(p.phi) * std::sin(p.psi),
          p.r * st * std::cos(p.phi)};
}

double AxiomResiduals::max() const {
  return std::max({hermiticity, involution, commutator, normality});
}

AxiomResiduals check_domain_axioms(const MatrixXc& a, const MatrixXc& theta) {
  if (a.rows() != a.cols() || theta.rows() != theta.cols() || a.rows() != theta.rows()) {
    throw std::invalid_argument("check_domain_axioms: A and Theta must be square of equal size");
  }
  const auto n = a.rows();
  AxiomResiduals r;
  r.hermiticity = operator_norm(theta - theta.adjoint());
  r.involution = operator_norm(theta * theta - MatrixXc::Identity(n, n));
  r.commutator = operator_norm(a * theta - theta * a);
  r.normality = operator_norm(a * a.adjoint() - a.adjoint() * a);
  return r;
}

MatrixVariable::MatrixVariable(MatrixXc a, MatrixXc theta, double zeta, std::vector<double> measure_point)
    : a_(std::move(a)), theta_(std::move(theta)), zeta_(zeta), point_(std::move(measure_point)) {
  const AxiomResiduals res = check_domain_axioms(a_, theta_);
  const double scale = std::max(1.0, operator_norm(a_));
  if (res.hermiticity > 1e-10 || res.involution > 1e-10 || res.commutator > 1e-10 * scale ||
      res.normality > 1e-10 * scale * scale) {
    throw AxiomViolation("MatrixVariable: domain axioms violated (max residual " +
                         std::to_string(res.max()) + ")");
  }
  const auto n = a_.rows();
  z_ = a_ * (std::cos(zeta_) * MatrixXc::Identity(n, n) + kI * std::sin(zeta_) * theta_);
}

MatrixVariable MatrixVariable::from_quaternion(const PolarQuaternion& p) {
  MatrixXc a = p.r * MatrixXc::Identity(2, 2);
  MatrixXc theta = sigma_n(p.phi, p.psi);
  return MatrixVariable(std::move(a), std::move(theta), p.theta, {p.r, p.phi, p.psi});
}

MatrixVariable MatrixVariable::scalar(double r, double zeta) {
  MatrixXc a = MatrixXc::Constant(1, 1, r);
  MatrixXc theta = MatrixXc::Identity(1, 1);
  return MatrixVariable(std::move(a), std::move(theta), zeta, {r});
}

double MatrixVariable::radius() const {
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(a_ * a_.adjoint(), Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

MatrixVariable MatrixVariable::scaled(double s) const {
  return MatrixVariable(s * a_, theta_, zeta_, point_);
}

MatrixXc variable_power(const MatrixVariable& z, int m) {
  if (m < 0) throw std::invalid_argument("variable_power: exponent must be nonnegative");
  const auto n = z.dim();
  // A^m by repeated squaring.
  MatrixXc result = MatrixXc::Identity(n, n);
  MatrixXc base = z.a();
  for (int e = m; e > 0; e >>= 1) {
    if (e & 1) result = result * base;
    if (e > 1) base = base * base;
  }
  const double angle = m * z.zeta();
  return result * (std::cos(angle) * MatrixXc::Identity(n, n) + kI * std::sin(angle) * z.theta());
}

MatrixXc modulus(const MatrixXc& z) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(z * z.adjoint());
  const Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix2c QuaternionDiagonalization::projector_plus() const {
  return u.col(0) * u.col(0).adjoint();
}

Matrix2c QuaternionDiagonalization::projector_minus() const {
  return u.col(1) * u.col(1).adjoint();
}

QuaternionDiagonalization diagonalize_quaternion(const Quaternion& q) {
  QuaternionDiagonalization d;
  const double x0 = q.components()[0];
  const double v = q.vector_norm();
  if (v <= 1e-300 || v <= 1e-15 * q.radius()) {
    d.u = Matrix2c::Identity();
    d.z = cplx(x0, 0.0);
    return d;
  }
  const Matrix2c& m = q.matrix();
  const Matrix2c h = (m - m.adjoint()) / cplx(0.0, 2.0);
  Eigen::SelfAdjointEigenSolver<Matrix2c> es(h);
  // Eigenvalues ascending: -|v| then +|v|. χ⁺ belongs to +|v|, i.e. z = x0 + i|v|.
  d.u.col(0) = es.eigenvectors().col(1);
  d.u.col(1) = es.eigenvectors().col(0);
  d.z = (d.u.col(0).adjoint() * m * d.u.col(0))(0, 0);
  return d;
}

void to_json(nlohmann::json& j, const Quaternion& q) {
  const auto& x = q.components();
  j = nlohmann::json{{"x", {x[0], x[1], x[2], x[3]}}};
}

void from_json(const nlohmann::json& j, Quaternion& q) {
  const auto x = j.at("x").get<std::vector<double>>();
  if (x.size() != 4) throw std::invalid_argument("Quaternion JSON needs 4 components");
  q = Quaternion(x[0], x[1], x[2], x[3]);
}

void to_json(nlohmann::json& j, const PolarQuaternion& p) {
  j = nlohmann::json{{"r", p.r}, {"theta", p.theta}, {"phi", p.phi}, {"psi", p.psi}};
}

void from_json(const nlohmann::json& j, PolarQuaternion& p) {
  p.r = j.at("r").get<double>();
  p.theta = j.at("theta").get<double>();
  p.phi = j.at("phi").get<double>();
  p.psi = j.at("psi").get<double>();
  if (p.r < 0.0) throw std::invalid_argument("PolarQuaternion: r must be nonnegative");
}

}  // namespace vcskit::matrixdomain
