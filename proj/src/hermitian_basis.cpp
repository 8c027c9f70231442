#include "cmn/hermitian_basis.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cmn {

HermitianBasis::HermitianBasis(int dim, std::vector<CMatrix> elements, bool identity_first)
    : dim_(dim), elements_(std::move(elements)), identity_first_(identity_first) {
  if (dim_ < 1) throw std::invalid_argument("HermitianBasis: invalid dimension " + std::to_string(dim_));
  const auto n = static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_);
  if (elements_.size() != n) {
    throw std::invalid_argument("HermitianBasis: expected " + std::to_string(n) + " elements, got " +
                                std::to_string(elements_.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const CMatrix& e = elements_[i];
    if (e.rows() != dim_ || e.cols() != dim_) {
      throw std::invalid_argument("HermitianBasis: element " + std::to_string(i) + " has shape " +
                                  dims_string(e.rows(), e.cols()));
    }
    if (hermiticity_error(e) > 1e-12) {
      throw std::invalid_argument("HermitianBasis: element " + std::to_string(i) + " is not Hermitian");
    }
  }
  const RMatrix g = gram();
  const double defect = (g - RMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
  if (defect > tol::kOrthonormal) {
    throw std::invalid_argument("HermitianBasis: Gram matrix deviates from identity by " + std::to_string(defect));
  }
  if (identity_first_) {
    const CMatrix scalar = CMatrix::Identity(dim_, dim_) / std::sqrt(static_cast<double>(dim_));
    if (max_abs_diff(elements_[0], scalar) > 1e-12) {
      throw std::invalid_argument("HermitianBasis: element 0 is not 1/sqrt(d)");
    }
    for (std::size_t i = 1; i < n; ++i) {
      if (std::abs(elements_[i].trace()) > 1e-12) {
        throw std::invalid_argument("HermitianBasis: element " + std::to_string(i) + " is not traceless");
      }
    }
  }
}

RMatrix HermitianBasis::gram() const {
  const auto n = static_cast<Eigen::Index>(elements_.size());
  RMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = (elements_[i] * elements_[j]).trace().real();
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

HermitianBasis generalized_gell_mann(int d) {
  if (d < 1) throw std::invalid_argument("generalized_gell_mann: invalid dimension " + std::to_string(d));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(d * d));
  out.push_back(CMatrix::Identity(d, d) / std::sqrt(static_cast<double>(d)));

  for (int k = 0; k < d; ++k) {
    for (int l = k + 1; l < d; ++l) {
      CMatrix e = CMatrix::Zero(d, d);
      e(k, l) = inv_sqrt2;
      e(l, k) = inv_sqrt2;
      out.push_back(std::move(e));
    }
  }
  // Sign chosen so that d = 2 yields sigma_y / sqrt(2).
  const Complex i_unit(0.0, 1.0);
  for (int k = 0; k < d; ++k) {
    for (int l = k + 1; l < d; ++l) {
      CMatrix e = CMatrix::Zero(d, d);
      e(k, l) = -i_unit * inv_sqrt2;
      e(l, k) = i_unit * inv_sqrt2;
      out.push_back(std::move(e));
    }
  }
  for (int l = 1; l < d; ++l) {
    const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    CMatrix e = CMatrix::Zero(d, d);
    for (int j = 0; j < l; ++j) e(j, j) = norm;
    e(l, l) = -static_cast<double>(l) * norm;
    out.push_back(std::move(e));
  }
  return HermitianBasis(d, std::move(out), true);
}

HermitianBasis rotate_basis(const HermitianBasis& basis, const RMatrix& rotation) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  if (rotation.rows() != n || rotation.cols() != n) {
    throw std::invalid_argument("rotate_basis: rotation has shape " + dims_string(rotation.rows(), rotation.cols()) +
                                ", expected " + dims_string(n, n));
  }
  if (orthogonality_error(rotation) > tol::kOrthonormal) {
    throw std::invalid_argument("rotate_basis: rotation is not orthogonal");
  }
  std::vector<CMatrix> out;
  out.reserve(basis.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    CMatrix e = CMatrix::Zero(basis.dim(), basis.dim());
    for (Eigen::Index k = 0; k < n; ++k) e += rotation(i, k) * basis[static_cast<std::size_t>(k)];
    // Remove rounding-level anti-Hermitian residue.
    out.push_back(0.5 * (e + e.adjoint()));
  }
  return HermitianBasis(basis.dim(), std::move(out), false);
}

RVector expand(const CMatrix& op, const HermitianBasis& basis) {
  if (op.rows() != basis.dim() || op.cols() != basis.dim()) {
    throw std::invalid_argument("expand: operator shape " + dims_string(op.rows(), op.cols()) +
                                " does not match basis dimension " + std::to_string(basis.dim()));
  }
  if (hermiticity_error(op) > tol::kHermitian) throw std::invalid_argument("expand: operator is not Hermitian");
  RVector coords(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    coords(static_cast<Eigen::Index>(i)) = (basis[i] * op).trace().real();
  }
  return coords;
}

CMatrix reconstruct(const RVector& coords, const HermitianBasis& basis) {
  if (static_cast<std::size_t>(coords.size()) != basis.size()) {
    throw std::invalid_argument("reconstruct: coordinate count does not match basis size");
  }
  CMatrix out = CMatrix::Zero(basis.dim(), basis.dim());
  for (std::size_t i = 0; i < basis.size(); ++i) out += coords(static_cast<Eigen::Index>(i)) * basis[i];
  return out;
}

}  // namespace cmn
