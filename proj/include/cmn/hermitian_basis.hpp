// Orthonormal bases of the real vector space of d x d Hermitian matrices,
// normalized as tr(E_i E_j) = delta_ij.
#pragma once

#include <vector>

#include "cmn/linalg.hpp"

namespace cmn {

class HermitianBasis {
 public:
  /// Validates Hermiticity, orthonormality and (when identity_first is set)
  /// that element 0 is 1/sqrt(d) with every other element traceless.
  /// Throws std::invalid_argument naming the failed invariant.
  HermitianBasis(int dim, std::vector<CMatrix> elements, bool identity_first);

  int dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  const CMatrix& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<CMatrix>& elements() const { return elements_; }

  /// False for bases produced by rotate_basis: element 0 need not be scalar.
  bool identity_first() const { return identity_first_; }

  /// Real Gram matrix tr(E_i E_j).
  RMatrix gram() const;

 private:
  int dim_;
  std::vector<CMatrix> elements_;
  bool identity_first_;
};

/// Identity/sqrt(d) first, then symmetric off-diagonal, antisymmetric
/// off-diagonal and traceless diagonal generators (each with tr(E^2) = 1).
HermitianBasis generalized_gell_mann(int d);

/// element_i' = sum_k R_ik element_k. R must be orthogonal within 1e-10.
HermitianBasis rotate_basis(const HermitianBasis& basis, const RMatrix& rotation);

/// Coordinates tr(E_i op) of a Hermitian operator.
RVector expand(const CMatrix& op, const HermitianBasis& basis);

/// Inverse of expand: sum_i coords_i E_i.
CMatrix reconstruct(const RVector& coords, const HermitianBasis& basis);

}  // namespace cmn
