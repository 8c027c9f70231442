#include "cmn/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace cmn {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double hermiticity_error(const CMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const CMatrix& m, double tolerance) {
  return hermiticity_error(m) <= tolerance;
}

RVector singular_values(const RMatrix& m) {
  if (m.size() == 0) return RVector();
  // JacobiSVD already returns them sorted in decreasing order.
  Eigen::JacobiSVD<RMatrix> svd(m);
  return svd.singularValues();
}

RVector hermitian_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

double orthogonality_error(const RMatrix& r) {
  if (r.rows() != r.cols()) return std::numeric_limits<double>::infinity();
  if (r.size() == 0) return 0.0;
  return (r.transpose() * r - RMatrix::Identity(r.rows(), r.cols())).cwiseAbs().maxCoeff();
}

double unitarity_error(const CMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  if (u.size() == 0) return 0.0;
  return (u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

CMatrix unitary_exp(const CMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian);
  const RVector& w = es.eigenvalues();
  CVector phases(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) phases(i) = std::polar(1.0, w(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

std::string dims_string(Eigen::Index rows, Eigen::Index cols) {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

}  // namespace cmn
