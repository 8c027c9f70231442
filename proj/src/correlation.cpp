#include "cmn/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/SVD>

namespace cmn {

CMatrix OperatorSchmidt::reconstruct() const {
  if (coefficients.empty()) return CMatrix();
  const auto da = ops_a.front().rows();
  const auto db = ops_b.front().rows();
  CMatrix out = CMatrix::Zero(da * db, da * db);
  for (std::size_t k = 0; k < coefficients.size(); ++k) out += coefficients[k] * kron(ops_a[k], ops_b[k]);
  return out;
}

RMatrix FnfBlocks::reassemble() const {
  RMatrix c(r.size() + 1, s.size() + 1);
  c(0, 0) = corner;
  c.block(0, 1, 1, s.size()) = s.transpose();
  c.block(1, 0, r.size(), 1) = r;
  c.block(1, 1, t.rows(), t.cols()) = t;
  return c;
}

CorrelationMatrix correlation_matrix(const DensityMatrix& rho, const HermitianBasis& basis_a,
                                     const HermitianBasis& basis_b) {
  if (basis_a.dim() != rho.dim_a() || basis_b.dim() != rho.dim_b()) {
    throw std::invalid_argument("correlation_matrix: basis dims (" + std::to_string(basis_a.dim()) + ", " +
                                std::to_string(basis_b.dim()) + ") do not match state dims (" +
                                std::to_string(rho.dim_a()) + ", " + std::to_string(rho.dim_b()) + ")");
  }
  const auto na = static_cast<Eigen::Index>(basis_a.size());
  const auto nb = static_cast<Eigen::Index>(basis_b.size());
  const CMatrix& m = rho.matrix();
  CorrelationMatrix c{rho.dim_a(), rho.dim_b(), RMatrix(na, nb),
                      basis_a.identity_first() && basis_b.identity_first()};
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < nb; ++j) {
      const CMatrix op = kron(basis_a[static_cast<std::size_t>(i)], basis_b[static_cast<std::size_t>(j)]);
      // tr(rho op) without forming the product.
      const Complex v = (m.transpose().cwiseProduct(op)).sum();
      if (std::abs(v.imag()) > tol::kImaginary) {
        throw std::invalid_argument("correlation_matrix: entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                    ") has imaginary part " + std::to_string(v.imag()));
      }
      c.entries(i, j) = v.real();
    }
  }
  return c;
}

CorrelationMatrix correlation_matrix(const DensityMatrix& rho) {
  return correlation_matrix(rho, generalized_gell_mann(rho.dim_a()), generalized_gell_mann(rho.dim_b()));
}

RVector correlation_singulars(const CorrelationMatrix& c) { return singular_values(c.entries); }

CMatrix state_from_correlation(const CorrelationMatrix& c, const HermitianBasis& basis_a,
                               const HermitianBasis& basis_b) {
  if (static_cast<std::size_t>(c.entries.rows()) != basis_a.size() ||
      static_cast<std::size_t>(c.entries.cols()) != basis_b.size()) {
    throw std::invalid_argument("state_from_correlation: shape does not match bases");
  }
  const int n = basis_a.dim() * basis_b.dim();
  CMatrix out = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < c.entries.rows(); ++i)
    for (Eigen::Index j = 0; j < c.entries.cols(); ++j)
      out += c.entries(i, j) * kron(basis_a[static_cast<std::size_t>(i)], basis_b[static_cast<std::size_t>(j)]);
  return out;
}

OperatorSchmidt operator_schmidt(const DensityMatrix& rho, const HermitianBasis& basis_a,
                                 const HermitianBasis& basis_b) {
  const CorrelationMatrix c = correlation_matrix(rho, basis_a, basis_b);
  Eigen::JacobiSVD<RMatrix> svd(c.entries, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector& sigma = svd.singularValues();
  const RMatrix& u = svd.matrixU();
  const RMatrix& v = svd.matrixV();

  OperatorSchmidt out;
  for (Eigen::Index k = 0; k < sigma.size(); ++k) {
    out.coefficients.push_back(sigma(k));
    CMatrix g = CMatrix::Zero(basis_a.dim(), basis_a.dim());
    for (Eigen::Index i = 0; i < u.rows(); ++i) g += u(i, k) * basis_a[static_cast<std::size_t>(i)];
    CMatrix h = CMatrix::Zero(basis_b.dim(), basis_b.dim());
    for (Eigen::Index j = 0; j < v.rows(); ++j) h += v(j, k) * basis_b[static_cast<std::size_t>(j)];
    out.ops_a.push_back(std::move(g));
    out.ops_b.push_back(std::move(h));
  }
  return out;
}

std::vector<double> realignment_singulars(const DensityMatrix& rho) {
  const int da = rho.dim_a();
  const int db = rho.dim_b();
  const CMatrix& m = rho.matrix();
  CMatrix realigned(da * da, db * db);
  for (int a = 0; a < da; ++a)
    for (int a2 = 0; a2 < da; ++a2)
      for (int b = 0; b < db; ++b)
        for (int b2 = 0; b2 < db; ++b2) realigned(a * da + a2, b * db + b2) = m(a * db + b, a2 * db + b2);
  Eigen::JacobiSVD<CMatrix> svd(realigned);
  const Eigen::VectorXd sv = svd.singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

FnfBlocks fnf_blocks(const CorrelationMatrix& c) {
  const double expected = 1.0 / std::sqrt(static_cast<double>(c.dim_a) * c.dim_b);
  if (!c.identity_first || c.entries.size() == 0 || std::abs(c.entries(0, 0) - expected) > 1e-8) {
    throw std::invalid_argument("fnf_blocks: correlation matrix was not built from identity-first bases");
  }
  const auto rows = c.entries.rows();
  const auto cols = c.entries.cols();
  FnfBlocks out;
  out.corner = c.entries(0, 0);
  out.s = c.entries.block(0, 1, 1, cols - 1).transpose();
  out.r = c.entries.block(1, 0, rows - 1, 1);
  out.t = c.entries.block(1, 1, rows - 1, cols - 1);
  return out;
}

std::vector<double> pure_operator_schmidt(const PureSchmidt& s, int min_dim) {
  const auto& c = s.coefficients();
  std::vector<double> out;
  out.reserve(c.size() * c.size());
  for (double x : c)
    for (double y : c) out.push_back(x * y);
  const auto target = static_cast<std::size_t>(std::max<int>(min_dim, static_cast<int>(c.size())));
  out.resize(target * target, 0.0);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace cmn
