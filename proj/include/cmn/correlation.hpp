// Correlation matrix C_ij = tr(rho A_i (x) B_j), its SVD / operator-Schmidt
// decomposition, the filter-normal-form block split, and the realignment
// cross-check.
#pragma once

#include <vector>

#include "cmn/hermitian_basis.hpp"
#include "cmn/states.hpp"

namespace cmn {

struct CorrelationMatrix {
  int dim_a = 0;
  int dim_b = 0;
  /// dA^2 x dB^2, real.
  RMatrix entries;
  /// True when both source bases put the scaled identity first.
  bool identity_first = false;
};

struct OperatorSchmidt {
  /// Descending, length min(dA^2, dB^2).
  std::vector<double> coefficients;
  std::vector<CMatrix> ops_a;
  std::vector<CMatrix> ops_b;

  /// sum_k lambda_k G_k (x) H_k.
  CMatrix reconstruct() const;
};

/// [[corner, s^T], [r, T]] split of an identity-first correlation matrix.
struct FnfBlocks {
  double corner = 0.0;
  RVector r;
  RVector s;
  RMatrix t;

  RMatrix reassemble() const;
};

/// Throws std::invalid_argument on basis/state dimension mismatch or when a
/// defining trace has imaginary part above 1e-10.
CorrelationMatrix correlation_matrix(const DensityMatrix& rho, const HermitianBasis& basis_a,
                                     const HermitianBasis& basis_b);

/// Generalized Gell-Mann bases on both sides.
CorrelationMatrix correlation_matrix(const DensityMatrix& rho);

/// Descending singular values of C, length min(dA^2, dB^2).
RVector correlation_singulars(const CorrelationMatrix& c);

/// Inverse map: rho = sum_ij C_ij A_i (x) B_j.
CMatrix state_from_correlation(const CorrelationMatrix& c, const HermitianBasis& basis_a,
                               const HermitianBasis& basis_b);

/// G_k = sum_i U_ik A_i, H_k = sum_j V_jk B_j from C = U Sigma V^T. Within
/// degenerate coefficients the operators are only defined up to rotation.
OperatorSchmidt operator_schmidt(const DensityMatrix& rho, const HermitianBasis& basis_a,
                                 const HermitianBasis& basis_b);

/// Singular values of the dA^2 x dB^2 realigned matrix
/// R_{(a a'),(b b')} = rho_{(a b),(a' b')}, truncated to min(dA^2, dB^2).
std::vector<double> realignment_singulars(const DensityMatrix& rho);

/// Rejects matrices whose corner is not 1/sqrt(dA dB) within 1e-8.
FnfBlocks fnf_blocks(const CorrelationMatrix& c);

/// All ordered products s_k s_l (padded with zeros to d^2), descending.
std::vector<double> pure_operator_schmidt(const PureSchmidt& s, int min_dim = 0);

}  // namespace cmn
