// Shared numeric types and small dense helpers.
#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cmn {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

enum class Subsystem { A, B };

/// Raised when a computed quantity contradicts a proven property
/// (e.g. a discord value clearly below zero). Distinct from bad input,
/// which is reported with std::invalid_argument.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kPsd = 1e-9;
inline constexpr double kOrthonormal = 1e-10;
inline constexpr double kImaginary = 1e-10;
inline constexpr double kDesign = 1e-9;
inline constexpr double kPurity = 1e-8;
}  // namespace tol

CMatrix kron(const CMatrix& a, const CMatrix& b);

bool is_hermitian(const CMatrix& m, double tolerance);

/// Largest entrywise modulus of m - m^dagger.
double hermiticity_error(const CMatrix& m);

/// Singular values in descending order.
RVector singular_values(const RMatrix& m);

/// Eigenvalues of a Hermitian matrix, ascending.
RVector hermitian_eigenvalues(const CMatrix& m);

/// Largest |a_ij - b_ij|.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// Orthogonality defect max |R^T R - 1|.
double orthogonality_error(const RMatrix& r);

/// Unitarity defect max |U^dagger U - 1|.
double unitarity_error(const CMatrix& u);

/// exp(iH) for Hermitian H via eigendecomposition.
CMatrix unitary_exp(const CMatrix& hermitian);

std::string dims_string(Eigen::Index rows, Eigen::Index cols);

}  // namespace cmn
