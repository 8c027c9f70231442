// Brute-force oracles and small helpers shared by the unit tests.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "cmn/linalg.hpp"

namespace testing {

/// S_h by enumerating every h-subset.
inline double naive_elementary_symmetric(int h, const std::vector<double>& values) {
  const int n = static_cast<int>(values.size());
  double total = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != h) continue;
    double prod = 1.0;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) prod *= values[static_cast<std::size_t>(i)];
    total += prod;
  }
  return total;
}

/// Determinant by Laplace expansion along the first row.
inline double laplace_det(const cmn::RMatrix& m) {
  const Eigen::Index n = m.rows();
  if (n == 0) return 1.0;
  if (n == 1) return m(0, 0);
  double det = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    cmn::RMatrix minor(n - 1, n - 1);
    for (Eigen::Index r = 1; r < n; ++r)
      for (Eigen::Index c = 0, k = 0; c < n; ++c)
        if (c != j) minor(r - 1, k++) = m(r, c);
    det += ((j % 2) ? -1.0 : 1.0) * m(0, j) * laplace_det(minor);
  }
  return det;
}

inline cmn::CMatrix random_hermitian(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  cmn::CMatrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = cmn::Complex(g(rng), g(rng));
  return 0.5 * (m + m.adjoint());
}

inline std::vector<double> to_std(const cmn::RVector& v) { return {v.data(), v.data() + v.size()}; }

inline double max_diff(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace testing
