#include "cmn/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/QR>

namespace cmn {

namespace {

void require_unit_interval(double x, const char* who, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument(std::string(who) + ": " + name + " = " + std::to_string(x) + " outside [0, 1]");
  }
}

CVector gaussian_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

CVector haar_vector(int n, std::mt19937_64& rng) {
  CVector v = gaussian_vector(n, rng);
  return v / v.norm();
}

std::vector<double> dirichlet_weights(int n, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(static_cast<std::size_t>(n));
  for (double& x : w) x = expo(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return w;
}

CMatrix haar_unitary(int d, std::mt19937_64& rng) {
  CMatrix g(d, d);
  for (int j = 0; j < d; ++j) g.col(j) = gaussian_vector(d, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    const Complex diag = r(j, j);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(j) *= diag / mag;
  }
  return q;
}

// Designs in dimension b with exactly v elements, if one is constructible.
std::vector<QuantumDesign> designs_with_count(int b, int v) {
  std::vector<QuantumDesign> out;
  if (v == b) out.push_back(orthonormal_basis_design(b));
  if (b >= 2 && v == b + 1) out.push_back(simplex_design(b));
  if ((b == 2 || b == 3) && v == b * b) out.push_back(sic_povm(b));
  return out;
}

}  // namespace

DensityMatrix::DensityMatrix(int dim_a, int dim_b, CMatrix matrix)
    : dim_a_(dim_a), dim_b_(dim_b), matrix_(std::move(matrix)) {
  if (dim_a_ < 1 || dim_b_ < 1) {
    throw InvalidState("DensityMatrix: invalid dimensions " + std::to_string(dim_a_) + "x" + std::to_string(dim_b_));
  }
  const int n = dim_a_ * dim_b_;
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw InvalidState("DensityMatrix: matrix shape " + dims_string(matrix_.rows(), matrix_.cols()) +
                       " does not match dims " + std::to_string(dim_a_) + "x" + std::to_string(dim_b_));
  }
  if (!matrix_.allFinite()) throw InvalidState("DensityMatrix: non-finite entry");
  const double herm = hermiticity_error(matrix_);
  if (herm > tol::kHermitian) {
    throw InvalidState("DensityMatrix: not Hermitian (deviation " + std::to_string(herm) + ")");
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol::kTrace) {
    throw InvalidState("DensityMatrix: trace " + std::to_string(tr.real()) + " != 1");
  }
  const double min_eig = hermitian_eigenvalues(matrix_)(0);
  if (min_eig < -tol::kPsd) {
    throw InvalidState("DensityMatrix: not positive semidefinite (min eigenvalue " + std::to_string(min_eig) + ")");
  }
}

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

PureSchmidt::PureSchmidt(std::vector<double> coefficients) : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) throw std::invalid_argument("PureSchmidt: no coefficients");
  double norm2 = 0.0;
  for (std::size_t k = 0; k < coefficients_.size(); ++k) {
    const double s = coefficients_[k];
    if (!(s >= 0.0)) throw std::invalid_argument("PureSchmidt: negative coefficient");
    if (k > 0 && s > coefficients_[k - 1]) throw std::invalid_argument("PureSchmidt: coefficients not descending");
    norm2 += s * s;
  }
  if (std::abs(norm2 - 1.0) > 1e-12) {
    throw std::invalid_argument("PureSchmidt: sum of squares " + std::to_string(norm2) + " != 1");
  }
}

PureSchmidt PureSchmidt::from_unsorted(std::vector<double> coefficients) {
  std::sort(coefficients.begin(), coefficients.end(), std::greater<>());
  return PureSchmidt(std::move(coefficients));
}

DensityMatrix pure_state(const CVector& psi, int dim_a, int dim_b) {
  if (psi.size() != static_cast<Eigen::Index>(dim_a) * dim_b) {
    throw std::invalid_argument("pure_state: vector length does not match dims");
  }
  const CVector u = psi / psi.norm();
  return DensityMatrix(dim_a, dim_b, u * u.adjoint());
}

DensityMatrix pure_from_schmidt(const PureSchmidt& s, int dim_a, int dim_b) {
  if (dim_a < 1 || dim_b < 1) throw std::invalid_argument("pure_from_schmidt: invalid dims");
  if (s.size() > static_cast<std::size_t>(std::min(dim_a, dim_b))) {
    throw std::invalid_argument("pure_from_schmidt: " + std::to_string(s.size()) +
                                " coefficients exceed min(dA, dB) = " + std::to_string(std::min(dim_a, dim_b)));
  }
  CVector psi = CVector::Zero(dim_a * dim_b);
  for (std::size_t k = 0; k < s.size(); ++k) {
    const int idx = static_cast<int>(k) * dim_b + static_cast<int>(k);
    psi(idx) = s.coefficients()[k];
  }
  return DensityMatrix(dim_a, dim_b, psi * psi.adjoint());
}

DensityMatrix product_state(const CMatrix& rho_a, const CMatrix& rho_b) {
  return DensityMatrix(static_cast<int>(rho_a.rows()), static_cast<int>(rho_b.rows()), kron(rho_a, rho_b));
}

DensityMatrix design_state(const QuantumDesign& design_a, const QuantumDesign& design_b) {
  if (design_a.count() != design_b.count() || design_a.count() == 0) {
    throw std::invalid_argument("design_state: designs have " + std::to_string(design_a.count()) + " and " +
                                std::to_string(design_b.count()) + " elements");
  }
  const int n = design_a.dim * design_b.dim;
  CMatrix rho = CMatrix::Zero(n, n);
  for (int k = 0; k < design_a.count(); ++k) {
    rho += kron(design_a.projectors[static_cast<std::size_t>(k)], design_b.projectors[static_cast<std::size_t>(k)]);
  }
  rho /= static_cast<double>(design_a.count());
  return DensityMatrix(design_a.dim, design_b.dim, std::move(rho));
}

DensityMatrix werner(int d, double c) {
  if (d < 1) throw std::invalid_argument("werner: invalid dimension " + std::to_string(d));
  require_unit_interval(c, "werner", "c");
  CVector phi = CVector::Zero(d * d);
  for (int k = 0; k < d; ++k) phi(k * d + k) = 1.0 / std::sqrt(static_cast<double>(d));
  const CMatrix rho = c * (phi * phi.adjoint()) + ((1.0 - c) / (d * d)) * CMatrix::Identity(d * d, d * d);
  return DensityMatrix(d, d, rho);
}

DensityMatrix maximally_mixed(int dim_a, int dim_b) {
  const int n = dim_a * dim_b;
  return DensityMatrix(dim_a, dim_b, CMatrix::Identity(n, n) / static_cast<double>(n));
}

DensityMatrix ccnr_gap_state(double q) {
  require_unit_interval(q, "ccnr_gap_state", "q");
  const DensityMatrix rho0 = design_state(simplex_design(3), sic_povm(2));
  CVector psi = CVector::Zero(6);
  psi(1 * 2 + 1) = 1.0;
  psi(2 * 2 + 0) = 1.0;
  psi /= std::sqrt(2.0);
  const CMatrix rho1 = psi * psi.adjoint();
  return DensityMatrix(3, 2, q * rho1 + (1.0 - q) * rho0.matrix());
}

DensityMatrix virzi_family(double q, double r) {
  require_unit_interval(q, "virzi_family", "q");
  require_unit_interval(r, "virzi_family", "r");
  CMatrix rho = CMatrix::Zero(4, 4);
  const double coherence = -r * std::sqrt(q * (1.0 - q));
  rho(1, 1) = q;
  rho(2, 2) = 1.0 - q;
  rho(1, 2) = coherence;
  rho(2, 1) = coherence;
  return DensityMatrix(2, 2, rho);
}

DensityMatrix random_separable(int dim_a, int dim_b, int n_terms, std::uint64_t seed) {
  if (n_terms < 1) throw std::invalid_argument("random_separable: n_terms must be >= 1");
  std::mt19937_64 rng(seed);
  const std::vector<double> w = dirichlet_weights(n_terms, rng);
  const int n = dim_a * dim_b;
  CMatrix rho = CMatrix::Zero(n, n);
  for (int k = 0; k < n_terms; ++k) {
    const CVector a = haar_vector(dim_a, rng);
    const CVector b = haar_vector(dim_b, rng);
    const CVector ab = kron(a, b);
    rho += w[static_cast<std::size_t>(k)] * (ab * ab.adjoint());
  }
  return DensityMatrix(dim_a, dim_b, 0.5 * (rho + rho.adjoint()));
}

DensityMatrix random_fnf_separable(int dim_a, int dim_b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Element counts for which both dimensions have a constructible design.
  std::vector<std::pair<QuantumDesign, QuantumDesign>> pairs;
  for (int v = 2; v <= 9; ++v) {
    for (const auto& da : designs_with_count(dim_a, v)) {
      for (const auto& db : designs_with_count(dim_b, v)) pairs.emplace_back(da, db);
    }
  }
  if (pairs.empty()) throw std::invalid_argument("random_fnf_separable: no design pair for these dimensions");

  std::uniform_int_distribution<int> n_components(1, 4);
  const int m = n_components(rng);
  std::vector<double> w = dirichlet_weights(m + 1, rng);
  std::bernoulli_distribution keep_noise(0.5);
  if (!keep_noise(rng)) {
    w.back() = 0.0;
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& x : w) x /= total;
  }

  const int n = dim_a * dim_b;
  CMatrix rho = w.back() * CMatrix::Identity(n, n) / static_cast<double>(n);
  std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
  for (int j = 0; j < m; ++j) {
    auto [da, db] = pairs[pick(rng)];
    std::vector<std::size_t> order(db.projectors.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    QuantumDesign shuffled = db;
    for (std::size_t k = 0; k < order.size(); ++k) shuffled.projectors[k] = db.projectors[order[k]];
    const CMatrix ua = haar_unitary(dim_a, rng);
    const CMatrix ub = haar_unitary(dim_b, rng);
    const DensityMatrix piece = design_state(rotate_design(da, ua), rotate_design(shuffled, ub));
    rho += w[static_cast<std::size_t>(j)] * piece.matrix();
  }
  return DensityMatrix(dim_a, dim_b, 0.5 * (rho + rho.adjoint()));
}

DensityMatrix random_density(int dim_a, int dim_b, std::uint64_t seed, int rank) {
  std::mt19937_64 rng(seed);
  const int n = dim_a * dim_b;
  const int k = rank > 0 ? std::min(rank, n) : n;
  CMatrix g(n, k);
  for (int j = 0; j < k; ++j) g.col(j) = gaussian_vector(n, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(dim_a, dim_b, 0.5 * (rho + rho.adjoint()));
}

DensityMatrix random_pure(int dim_a, int dim_b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const CVector psi = haar_vector(dim_a * dim_b, rng);
  return DensityMatrix(dim_a, dim_b, psi * psi.adjoint());
}

CMatrix random_unitary(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haar_unitary(d, rng);
}

RMatrix random_orthogonal(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  RMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<RMatrix> qr(g);
  RMatrix q = qr.householderQ() * RMatrix::Identity(n, n);
  const RMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    if (r(j, j) < 0) q.col(j) *= -1.0;
  }
  return q;
}

DensityMatrix mix(const std::vector<DensityMatrix>& states, const std::vector<double>& weights) {
  if (states.empty() || states.size() != weights.size()) {
    throw std::invalid_argument("mix: need one weight per state");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("mix: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("mix: weights sum to " + std::to_string(total));
  const int da = states.front().dim_a();
  const int db = states.front().dim_b();
  CMatrix rho = CMatrix::Zero(da * db, da * db);
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dim_a() != da || states[i].dim_b() != db) throw std::invalid_argument("mix: dimension mismatch");
    rho += weights[i] * states[i].matrix();
  }
  return DensityMatrix(da, db, rho);
}

CMatrix partial_transpose(const DensityMatrix& rho, Subsystem subsystem) {
  const int da = rho.dim_a();
  const int db = rho.dim_b();
  const CMatrix& m = rho.matrix();
  CMatrix out(m.rows(), m.cols());
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int a2 = 0; a2 < da; ++a2)
        for (int b2 = 0; b2 < db; ++b2) {
          const Complex v = m(a * db + b, a2 * db + b2);
          if (subsystem == Subsystem::B) {
            out(a * db + b2, a2 * db + b) = v;
          } else {
            out(a2 * db + b, a * db + b2) = v;
          }
        }
  return out;
}

double ppt_min_eigenvalue(const DensityMatrix& rho) {
  return hermitian_eigenvalues(partial_transpose(rho, Subsystem::B))(0);
}

bool ppt_entangled(const DensityMatrix& rho) { return ppt_min_eigenvalue(rho) < -1e-9; }

CMatrix reduced_state(const DensityMatrix& rho, Subsystem keep) {
  const int da = rho.dim_a();
  const int db = rho.dim_b();
  const CMatrix& m = rho.matrix();
  if (keep == Subsystem::A) {
    CMatrix out = CMatrix::Zero(da, da);
    for (int a = 0; a < da; ++a)
      for (int a2 = 0; a2 < da; ++a2)
        for (int b = 0; b < db; ++b) out(a, a2) += m(a * db + b, a2 * db + b);
    return out;
  }
  CMatrix out = CMatrix::Zero(db, db);
  for (int b = 0; b < db; ++b)
    for (int b2 = 0; b2 < db; ++b2)
      for (int a = 0; a < da; ++a) out(b, b2) += m(a * db + b, a * db + b2);
  return out;
}

double entanglement_entropy(const DensityMatrix& rho) {
  const double purity = rho.purity();
  if (purity < 1.0 - tol::kPurity) {
    throw std::invalid_argument("entanglement_entropy: state is mixed (purity " + std::to_string(purity) + ")");
  }
  const RVector w = hermitian_eigenvalues(reduced_state(rho, Subsystem::A));
  double s = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const double x = w(i);
    if (x > 1e-15) s -= x * std::log2(x);
  }
  return std::max(0.0, s);
}

bool is_fnf(const DensityMatrix& rho, double tol) {
  const CMatrix ra = reduced_state(rho, Subsystem::A);
  const CMatrix rb = reduced_state(rho, Subsystem::B);
  const CMatrix ia = CMatrix::Identity(rho.dim_a(), rho.dim_a()) / static_cast<double>(rho.dim_a());
  const CMatrix ib = CMatrix::Identity(rho.dim_b(), rho.dim_b()) / static_cast<double>(rho.dim_b());
  return max_abs_diff(ra, ia) <= tol && max_abs_diff(rb, ib) <= tol;
}

DensityMatrix local_unitary(const DensityMatrix& rho, const CMatrix& u_a, const CMatrix& u_b) {
  if (u_a.rows() != rho.dim_a() || u_b.rows() != rho.dim_b()) {
    throw std::invalid_argument("local_unitary: unitary dimensions do not match state");
  }
  const CMatrix u = kron(u_a, u_b);
  CMatrix out = u * rho.matrix() * u.adjoint();
  return DensityMatrix(rho.dim_a(), rho.dim_b(), 0.5 * (out + out.adjoint()));
}

DensityMatrix swap_subsystems(const DensityMatrix& rho) {
  const int da = rho.dim_a();
  const int db = rho.dim_b();
  const CMatrix& m = rho.matrix();
  CMatrix out(m.rows(), m.cols());
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < db; ++b)
      for (int a2 = 0; a2 < da; ++a2)
        for (int b2 = 0; b2 < db; ++b2) out(b * da + a, b2 * da + a2) = m(a * db + b, a2 * db + b2);
  return DensityMatrix(db, da, out);
}

}  // namespace cmn
