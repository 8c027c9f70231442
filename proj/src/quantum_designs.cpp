#include "cmn/quantum_designs.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cmn {

namespace {

void require_dim(int b, int min_b, const char* who) {
  if (b < min_b) {
    throw std::invalid_argument(std::string(who) + ": invalid dimension " + std::to_string(b) +
                                " (need >= " + std::to_string(min_b) + ")");
  }
}

// Lower-triangular regular simplex: vertex i has zeros beyond coordinate i,
// unit norm, and pairwise dot product -1/b.
std::vector<RVector> simplex_vertices(int b) {
  std::vector<RVector> v(static_cast<std::size_t>(b + 1), RVector::Zero(b));
  const double dot = -1.0 / b;
  for (int i = 0; i <= b; ++i) {
    RVector& x = v[static_cast<std::size_t>(i)];
    const int known = std::min(i, b);
    for (int j = 0; j < known; ++j) {
      const RVector& y = v[static_cast<std::size_t>(j)];
      double acc = dot;
      for (int m = 0; m < j; ++m) acc -= x(m) * y(m);
      x(j) = acc / y(j);
    }
    if (i < b) x(i) = std::sqrt(std::max(0.0, 1.0 - x.head(i).squaredNorm()));
  }
  return v;
}

}  // namespace

double design_overlap(int dim, int count) {
  if (count < 2) return 0.0;
  return static_cast<double>(count - dim) / (static_cast<double>(dim) * (count - 1));
}

CMatrix projector(const CVector& v) {
  const CVector u = v / v.norm();
  return u * u.adjoint();
}

QuantumDesign orthonormal_basis_design(int b) {
  require_dim(b, 1, "orthonormal_basis_design");
  QuantumDesign d{b, {}, 0.0};
  for (int k = 0; k < b; ++k) {
    CMatrix p = CMatrix::Zero(b, b);
    p(k, k) = 1.0;
    d.projectors.push_back(std::move(p));
  }
  return d;
}

QuantumDesign sic_povm(int b) {
  if (b == 2) {
    // Bloch vectors of the regular tetrahedron: the b = 3 simplex with its
    // axes relabelled (z, x, y), so the first state is |0>.
    const auto verts = simplex_vertices(3);
    const CMatrix sx = (CMatrix(2, 2) << 0, 1, 1, 0).finished();
    const CMatrix sy = (CMatrix(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
    const CMatrix sz = (CMatrix(2, 2) << 1, 0, 0, -1).finished();
    QuantumDesign d{2, {}, design_overlap(2, 4)};
    for (const RVector& v : verts) {
      const double z = v(0), x = v(1), y = v(2);
      d.projectors.push_back(0.5 * (CMatrix::Identity(2, 2) + x * sx + y * sy + z * sz));
    }
    return d;
  }
  if (b == 3) {
    const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    CVector fiducial(3);
    fiducial << 0.0, 1.0, -1.0;
    fiducial /= std::sqrt(2.0);
    QuantumDesign d{3, {}, design_overlap(3, 9)};
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        // X^j Z^k |psi>: Z multiplies component m by omega^(k m), X shifts m -> m + j.
        CVector out = CVector::Zero(3);
        for (int m = 0; m < 3; ++m) out((m + j) % 3) = std::pow(omega, k * m) * fiducial(m);
        d.projectors.push_back(projector(out));
      }
    }
    const DesignReport r = verify_design(d);
    if (!r.ok()) throw InvariantViolation("sic_povm(3): Weyl-Heisenberg orbit failed design verification");
    return d;
  }
  throw std::invalid_argument("sic_povm: unsupported dimension " + std::to_string(b) + " (supported: 2, 3)");
}

QuantumDesign simplex_design(int b) {
  require_dim(b, 2, "simplex_design");
  QuantumDesign d{b, {}, design_overlap(b, b + 1)};
  for (const RVector& v : simplex_vertices(b)) d.projectors.push_back(projector(v.cast<Complex>()));
  return d;
}

QuantumDesign rotate_design(const QuantumDesign& design, const CMatrix& unitary) {
  if (unitary.rows() != design.dim || unitary.cols() != design.dim) {
    throw std::invalid_argument("rotate_design: unitary shape does not match design dimension");
  }
  if (unitarity_error(unitary) > 1e-10) throw std::invalid_argument("rotate_design: matrix is not unitary");
  QuantumDesign out{design.dim, {}, design.overlap};
  for (const CMatrix& p : design.projectors) out.projectors.push_back(unitary * p * unitary.adjoint());
  return out;
}

DesignReport verify_design(const QuantumDesign& design) {
  DesignReport r;
  const int b = design.dim;
  const int v = design.count();
  if (b < 1 || v < 1) return r;

  bool shapes_ok = true;
  for (const CMatrix& p : design.projectors) {
    if (p.rows() != b || p.cols() != b) {
      shapes_ok = false;
      continue;
    }
    const double herm = hermiticity_error(p);
    const double idem = (p * p - p).cwiseAbs().maxCoeff();
    const double tr = std::abs(p.trace() - Complex(1.0, 0.0));
    r.max_regular_deviation = std::max({r.max_regular_deviation, herm, idem, tr});
  }
  if (!shapes_ok) {
    r.max_regular_deviation = std::numeric_limits<double>::infinity();
    return r;
  }
  r.regular_r1 = r.max_regular_deviation <= tol::kDesign;

  CMatrix sum = CMatrix::Zero(b, b);
  for (const CMatrix& p : design.projectors) sum += p;
  r.max_coherence_deviation =
      (sum - (static_cast<double>(v) / b) * CMatrix::Identity(b, b)).cwiseAbs().maxCoeff();
  r.coherent = r.max_coherence_deviation <= tol::kDesign;

  double total = 0.0;
  int pairs = 0;
  std::vector<double> overlaps;
  for (int k = 0; k < v; ++k) {
    for (int l = k + 1; l < v; ++l) {
      const double o = (design.projectors[static_cast<std::size_t>(k)] *
                        design.projectors[static_cast<std::size_t>(l)]).trace().real();
      overlaps.push_back(o);
      total += o;
      ++pairs;
    }
  }
  r.measured_overlap = pairs > 0 ? total / pairs : 0.0;
  for (double o : overlaps) {
    r.max_degree_deviation = std::max(r.max_degree_deviation, std::abs(o - r.measured_overlap));
  }
  r.max_degree_deviation = std::max(r.max_degree_deviation, std::abs(r.measured_overlap - design.overlap));
  r.degree1 = r.max_degree_deviation <= tol::kDesign;
  return r;
}

}  // namespace cmn
