#pragma once

// Certification checks. Each returns a VerificationReport whose residual is
// compared against the supplied tolerance.

#include "vcskit/report.hpp"
#include "vcskit/resolution.hpp"

#include <span>

namespace vcskit::verify {

using fock::StateVector;
using matrixdomain::MatrixVariable;
using matrixdomain::PolarQuaternion;
using matrixdomain::Quaternion;

/// max |Σ_j ‖|Z,j>‖² - 1| over the samples. M <= 0 selects the truncation
/// per sample from the tail bound; a fixed M that is too small produces a
/// failing report carrying the required M.
VerificationReport check_normalization(const vcs::FamilySpec& fam, std::span<const MatrixVariable> samples,
                                       int M, double tol = 1e-9);

/// Largest relative error of ∫ λ(r) r^{2m+1} dr against ρ(m), m <= m_max.
/// The interpolating family is also checked in its printed scalar form
/// π ∫ t^m λ(t) dt = [(2κ+m-1)!]², integrated in s = √t.
VerificationReport check_moment(const vcs::FamilySpec& fam, int m_max, double tol, int nodes = 400);

struct ResolutionOutcome {
  VerificationReport report;
  MatrixXc s;  // assembled S on modes 0..M_check
};

/// ‖S - I‖₂ on modes m <= M_check. Requires M_check < M and more ζ nodes
/// than 2·M_check (otherwise the trapezoid rule aliases).
ResolutionOutcome check_resolution(const vcs::FamilySpec& fam, int n, int M, int M_check, const GridSpec& grid,
                                   double tol, GramCache* cache = nullptr);

struct KernelOptions {
  bool weighted = true;  // false drops W(|Z''|) from the integrand, for comparison only
  int min_modes = 0;     // assemble at least this many modes (lets callers share a Gram cache)
};

/// max entrywise |∫ K(Z†,Z'') K(Z''†,Z') W dμ - K(Z†,Z')| over the pairs.
VerificationReport check_kernel(const vcs::FamilySpec& fam, std::span<const std::pair<MatrixVariable, MatrixVariable>> pairs,
                                const GridSpec& grid, double tol, GramCache* cache = nullptr,
                                const KernelOptions& opt = {});

/// max |<Ψ_a|S|Ψ_b> - <Ψ_a|Ψ_b>| over all pairs of the supplied states, each
/// supported on modes <= M_check (the state space fixes M_check + 1).
VerificationReport check_isometry(const vcs::FamilySpec& fam, std::span<const StateVector> states,
                                  const GridSpec& grid, double tol, GramCache* cache = nullptr);

enum class UncertaintyMode {
  minimal,     // residual = max |ΔQ ΔP - 1/2|
  lower_bound  // residual = max(0, 1/2 - min ΔQ ΔP)
};

struct UncertaintyProduct {
  double dq = 0.0;
  double dp = 0.0;
  double product() const { return dq * dp; }
};

/// Standard deviations of hermitian Q, P in a normalised state; <Q²> is
/// taken as ‖Qψ‖².
UncertaintyProduct uncertainty_product(const StateVector& psi, const MatrixXc& q, const MatrixXc& p);

VerificationReport check_uncertainty(std::span<const StateVector> states, const fock::OperatorMatrix& q,
                                     const fock::OperatorMatrix& p, UncertaintyMode mode, double tol);

enum class AlgebraRep { oscillator, su11, interpolating };
std::string to_string(AlgebraRep rep);
AlgebraRep parse_algebra_rep(const std::string& s);

/// Largest round-off-relative interior error over the representation's
/// commutators, Casimir value and number-operator relations. Each entry of
/// lhs - rhs is divided by max(1, largest magnitude among the products that
/// form it).
VerificationReport check_algebra(AlgebraRep rep, double kappa, int M, double tol = 1e-12);

/// max ‖(I_n ⊗ a)|Z,j> - (Z ⊗ I)|Z,j>‖ over samples and j.
VerificationReport check_eigenrelation(const vcs::FamilySpec& fam, std::span<const MatrixVariable> samples, int M,
                                       double tol = 1e-8);

/// Scalar Barut-Girardello: max ‖K_-|w> - w|w>‖.
VerificationReport check_bg_annihilation(double kappa, std::span<const cplx> ws, int M, double tol = 1e-8);

/// max ‖(1/√2) e^{q⊗a† - q†⊗a} χ^j⊗φ_0 - |q, j>‖, canonical family, M >= 48.
VerificationReport check_displacement(std::span<const Quaternion> qs, int M, double tol = 1e-8);

/// With A = q⊗a† and B = -q†⊗a: the interior commutator [A, B] = r² I and
/// e^{A+B} v = e^{-r²/2} e^A e^B v on v = χ^j⊗φ_m, m <= m_test.
VerificationReport check_bch(std::span<const Quaternion> qs, int M, double tol = 1e-8, int m_test = 4);

/// (1/√2) e^{w⊗K₊ - w†⊗K₋} χ^j⊗φ_0 against the Gilmore-Perelomov state at
/// q = disentangle_map(w), M >= 96.
VerificationReport check_su11_exponential(double kappa, std::span<const Quaternion> ws, int M, double tol = 1e-7);

/// Composition U(g1) U(g2) = U(g1 g2) at sample points, and U^κ(g_{z0}) φ_0
/// against the Gilmore-Perelomov series; the latter is evaluated with both
/// z0 and conj(z0) and the matching convention is recorded.
VerificationReport check_mobius(double kappa, std::span<const cplx> z0s, std::span<const cplx> points,
                                double tol = 1e-10);

/// max |direct - projector form| of the canonical coherent image.
VerificationReport check_holomorphic_image(std::span<const StateVector> states, std::span<const Quaternion> qs,
                                           double tol = 1e-10);

/// For every passing report in `base`, |residual(doubled) - residual(base)| < tol.
std::vector<VerificationReport> check_grid_convergence(const std::vector<VerificationReport>& base,
                                                       const std::vector<VerificationReport>& doubled);

}  // namespace vcskit::verify
