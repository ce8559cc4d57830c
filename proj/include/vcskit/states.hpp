#pragma once

// Vector coherent states |Z, j> = N(|Z|)^{-1/2} Σ_m Z^m/√ρ(m) χ^j ⊗ φ_m and
// the objects derived from them.

#include "vcskit/family.hpp"

#include <nlohmann/json_fwd.hpp>

#include <span>

namespace vcskit::vcs {

using fock::StateVector;
using matrixdomain::MatrixVariable;
using matrixdomain::Quaternion;

/// Truncation too small for the requested label.
class TailBudgetError : public std::runtime_error {
 public:
  TailBudgetError(int required_M, int given_M, double radius);
  int required_M() const { return required_; }
  int given_M() const { return given_; }
  double radius() const { return radius_; }

 private:
  int required_;
  int given_;
  double radius_;
};

/// ln N(|Z|) = ln Σ_i Σ_m s_i^{2m}/ρ(m) over the singular values s_i of A.
double log_normalization(const FamilySpec& fam, const MatrixVariable& z);

/// Coordinates of |Z, j> on modes 0..M-1, normalised with the closed-form
/// N(|Z|). No tail check: this is the projection of the full state.
StateVector state_coefficients(const FamilySpec& fam, const MatrixVariable& z, int j, int M);

/// As state_coefficients, but throws TailBudgetError unless the dropped
/// tail is below rel_tail · N(|Z|). `j` is zero-based.
StateVector build_state(const FamilySpec& fam, const MatrixVariable& z, int j, int M,
                        double rel_tail = 1e-14);

/// Σ_j c_j |Z, j>.
StateVector superpose(const std::vector<StateVector>& states, std::span<const cplx> c);

/// K_{jl}(Z†, Z') = <Z, j | Z', l> from built states.
MatrixXc kernel(const FamilySpec& fam, const MatrixVariable& z, const MatrixVariable& zp, int M);
/// The same matrix from the series Σ_m (Z^m)† Z'^m / ρ(m).
MatrixXc kernel_series(const FamilySpec& fam, const MatrixVariable& z, const MatrixVariable& zp,
                       int M);

/// Canonical states e^{-r²/2} Σ z^m/√m! χ⁺ ⊗ φ_m and the z̄, χ⁻ partner.
struct MinimalUncertaintyPair {
  StateVector plus;
  StateVector minus;
  matrixdomain::QuaternionDiagonalization diag;
};
MinimalUncertaintyPair minimal_uncertainty_pair(const Quaternion& q, int M);

/// q = w tanh|w| / |w|, with q = 0 at w = 0.
Quaternion disentangle_map(const Quaternion& w);

/// f(z) = Σ_m f_m u_m(z), u_m(z) = [(2κ)_m/m!]^{1/2} z^m.
cplx evaluate_monomial_expansion(double kappa, std::span<const cplx> f, cplx z);

/// (U^κ(g) f)(z) = (α - β̄ z)^{-2κ} f((ᾱ z - β)/(α - β̄ z)) for
/// g = [[α, β], [β̄, ᾱ]] with |α|² - |β|² = 1 and |z| < 1.
cplx mobius_action(double kappa, const Matrix2c& g, std::span<const cplx> f, cplx z);

/// SU(1,1) element (1-r²)^{-1/2} [[1, z], [z̄, 1]].
Matrix2c su11_boost(cplx z);

/// (WΨ)^j(q) = <q, j | Ψ> for the canonical quaternionic family, computed
/// directly and from (1/√2) e^{-|z|²/2} [P⁺ f(z̄) + P⁻ f(z)].
struct CoherentImage {
  Vector2c direct;
  Vector2c projector_form;
};
CoherentImage coherent_image(const StateVector& psi, const Quaternion& q);

/// Coefficient dump: {"family", "kappa", "M", "j", "label", "coefficients":
/// [[j, m, re, im], ...]} with one-based j and only nonzero entries.
nlohmann::json state_to_json(const FamilySpec& fam, const nlohmann::json& label, int j,
                             const StateVector& state);

}  // namespace vcskit::vcs
