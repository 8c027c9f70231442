// Regular (r = 1), coherent, degree-1 quantum designs: v pure projectors in
// dimension b with equal pairwise overlaps and sum proportional to identity.
#pragma once

#include <vector>

#include "cmn/linalg.hpp"

namespace cmn {

struct QuantumDesign {
  int dim = 0;
  std::vector<CMatrix> projectors;
  /// Common pairwise overlap tr(P_k P_l), k != l.
  double overlap = 0.0;

  int count() const { return static_cast<int>(projectors.size()); }
};

/// (v - b) / (b (v - 1)); zero when v == 1.
double design_overlap(int dim, int count);

struct DesignReport {
  bool regular_r1 = false;
  bool coherent = false;
  bool degree1 = false;
  /// Mean off-diagonal overlap (0 when v < 2).
  double measured_overlap = 0.0;
  double max_regular_deviation = 0.0;
  double max_coherence_deviation = 0.0;
  double max_degree_deviation = 0.0;

  bool ok() const { return regular_r1 && coherent && degree1; }
};

/// Computational basis projectors |k><k|, overlap 0.
QuantumDesign orthonormal_basis_design(int b);

/// SIC-POVM for b = 2 (tetrahedron with a vertex on the +z axis) or b = 3
/// (Weyl-Heisenberg orbit of the fiducial (0, 1, -1)/sqrt(2)).
QuantumDesign sic_povm(int b);

/// b + 1 real unit vectors at the vertices of a regular simplex in R^b,
/// built lower-triangularly from e_0. Overlap 1/b^2.
QuantumDesign simplex_design(int b);

/// U P_k U^dagger for every projector; still a design with the same overlap.
QuantumDesign rotate_design(const QuantumDesign& design, const CMatrix& unitary);

/// Checks every design property at tolerance 1e-9. Never throws.
DesignReport verify_design(const QuantumDesign& design);

/// Rank-one projector onto the normalized vector v.
CMatrix projector(const CVector& v);

}  // namespace cmn
