#pragma once

// Assembly of S = Σ_j ∫ W |Z,j><Z,j| dμ on the product grid, restricted to
// the first `modes` Fock modes.
//
// The fast path factorises the integrand: with Z = r U(ζ, n̂), U unitary,
//   S_{(j,m),(j',l)} = G_{(j,m),(j',l)} · R_{ml},
//   G = Σ_angular w_a Σ_j (U^m)_{·j} ((U^l)_{·j})†,
//   R_{ml} = Σ_r w_r r (W/N)(r) r^{m+l} / √(ρ(m) ρ(l)),
// which is exact for the product rule. The reference path loops over every
// node and builds each state explicitly.

#include "vcskit/quadrature.hpp"
#include "vcskit/states.hpp"

#include <map>
#include <mutex>
#include <tuple>

namespace vcskit::verify {

enum class Execution { serial, parallel };

/// Angular Gram matrix G (n·modes square). The parallel path splits the ζ
/// nodes into a fixed set of chunks and sums them in chunk order, so the
/// result does not depend on the thread count.
MatrixXc angular_gram(int n, int modes, const QuadratureGrid& grid, Execution exec);

/// Radial factor R (modes square). With weighted = false the factor W(r) is
/// dropped from the integrand, i.e. the measure is N(r) dμ only.
Eigen::MatrixXd radial_factor(const vcs::FamilySpec& fam, int n, int modes, const QuadratureGrid& grid,
                              bool weighted = true);

/// G ∘ (R ⊗ 1).
MatrixXc combine(const MatrixXc& gram, const Eigen::MatrixXd& radial, int n, int modes);

/// Caches angular Gram matrices by (n, modes, angular grid).
class GramCache {
 public:
  const MatrixXc& get(int n, int modes, const QuadratureGrid& grid, Execution exec);
  std::size_t size() const;

 private:
  using Key = std::tuple<int, int, int, int, int>;
  mutable std::mutex mu_;
  std::map<Key, MatrixXc> cache_;
};

struct AssemblyOptions {
  Execution exec = Execution::parallel;
  bool weighted = true;
  GramCache* cache = nullptr;
};

MatrixXc assemble_resolution(const vcs::FamilySpec& fam, int n, int modes, const QuadratureGrid& grid,
                             const AssemblyOptions& opt = {});

/// Node-by-node serial reference. Cost grows with grid size × modes², so it
/// is meant for small grids.
MatrixXc assemble_resolution_reference(const vcs::FamilySpec& fam, int n, int modes,
                                       const QuadratureGrid& grid, bool weighted = true);

}  // namespace vcskit::verify
