// Bipartite density matrices, the state families used throughout the
// library, and the PPT / entropy reference oracles.
#pragma once

#include <cstdint>
#include <vector>

#include "cmn/linalg.hpp"
#include "cmn/quantum_designs.hpp"

namespace cmn {

/// Raised when a matrix fails a density-matrix invariant.
class InvalidState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Complex (dA*dB) x (dA*dB) state; row index = a * dB + b.
class DensityMatrix {
 public:
  /// Checks Hermiticity (1e-10), unit trace (1e-10) and PSD (min eigenvalue
  /// >= -1e-9). Throws InvalidState naming the first failed invariant.
  DensityMatrix(int dim_a, int dim_b, CMatrix matrix);

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  int max_dim() const { return std::max(dim_a_, dim_b_); }
  int min_dim() const { return std::min(dim_a_, dim_b_); }
  const CMatrix& matrix() const { return matrix_; }

  double purity() const;

 private:
  int dim_a_;
  int dim_b_;
  CMatrix matrix_;
};

/// Descending, non-negative, normalized pure-state Schmidt coefficients.
class PureSchmidt {
 public:
  /// Requires descending order and sum of squares 1 within 1e-12.
  explicit PureSchmidt(std::vector<double> coefficients);
  /// Sorts into descending order first.
  static PureSchmidt from_unsorted(std::vector<double> coefficients);

  const std::vector<double>& coefficients() const { return coefficients_; }
  std::size_t size() const { return coefficients_.size(); }

 private:
  std::vector<double> coefficients_;
};

DensityMatrix pure_from_schmidt(const PureSchmidt& s, int dim_a, int dim_b);

/// Projector |psi><psi| for a state vector in the a-major tensor basis.
DensityMatrix pure_state(const CVector& psi, int dim_a, int dim_b);

DensityMatrix product_state(const CMatrix& rho_a, const CMatrix& rho_b);

/// (1/v) sum_k P_k^A (x) P_k^B. Both designs need the same element count.
DensityMatrix design_state(const QuantumDesign& design_a, const QuantumDesign& design_b);

/// Isotropic form c |Phi><Phi| + (1 - c) 1/d^2, |Phi> = sum_k |kk>/sqrt(d).
DensityMatrix werner(int d, double c);

DensityMatrix maximally_mixed(int dim_a, int dim_b);

/// 3 x 2 state q |psi><psi| + (1 - q) rho_0 with psi = (|11> + |20>)/sqrt(2)
/// and rho_0 = design_state(simplex_design(3), sic_povm(2)).
DensityMatrix ccnr_gap_state(double q);

/// Two-qubit family supported on span{|01>, |10>} with coherence
/// -r sqrt(q (1 - q)).
DensityMatrix virzi_family(double q, double r);

/// Convex mixture of n_terms Haar-random pure product states with
/// Dirichlet(1, ..., 1) weights. Deterministic in seed.
DensityMatrix random_separable(int dim_a, int dim_b, int n_terms, std::uint64_t seed);

/// Separable state in filter normal form: a random convex mixture of
/// locally-rotated design states (and the maximally mixed state).
DensityMatrix random_fnf_separable(int dim_a, int dim_b, std::uint64_t seed);

/// Random full-rank (or given-rank) mixed state from a Ginibre matrix.
DensityMatrix random_density(int dim_a, int dim_b, std::uint64_t seed, int rank = 0);

/// Haar-random pure state of the joint system.
DensityMatrix random_pure(int dim_a, int dim_b, std::uint64_t seed);

/// Haar-random unitary (QR of a Ginibre matrix with phase correction).
CMatrix random_unitary(int d, std::uint64_t seed);

/// Haar-random orthogonal matrix.
RMatrix random_orthogonal(int n, std::uint64_t seed);

DensityMatrix mix(const std::vector<DensityMatrix>& states, const std::vector<double>& weights);

CMatrix partial_transpose(const DensityMatrix& rho, Subsystem subsystem);

/// Smallest eigenvalue of the partial transpose over B.
double ppt_min_eigenvalue(const DensityMatrix& rho);

/// True iff the partial transpose has an eigenvalue below -1e-9.
bool ppt_entangled(const DensityMatrix& rho);

CMatrix reduced_state(const DensityMatrix& rho, Subsystem keep);

/// von Neumann entropy (bits) of rho_A for a pure state; rejects mixed input.
double entanglement_entropy(const DensityMatrix& rho);

/// Both marginals maximally mixed within tol.
bool is_fnf(const DensityMatrix& rho, double tol = 1e-9);

/// (U_A (x) U_B) rho (U_A (x) U_B)^dagger.
DensityMatrix local_unitary(const DensityMatrix& rho, const CMatrix& u_a, const CMatrix& u_b);

/// Exchanges the roles of A and B (the state seen from B's side).
DensityMatrix swap_subsystems(const DensityMatrix& rho);

}  // namespace cmn
