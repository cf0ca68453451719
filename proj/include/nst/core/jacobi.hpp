#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "nst/core/matrix.hpp"

namespace nst {

struct SymmetricEigen {
  std::vector<double> values;  ///< ascending
  DenseMatrix vectors;         ///< column j is the eigenvector of values[j]
};

/// Eigendecomposition of a small symmetric matrix by cyclic Jacobi rotation
/// sweeps. Sweeps continue until the off-diagonal Frobenius mass drops below
/// `tol` relative to the matrix's Frobenius norm (absolute when the matrix is
/// zero). Intended for the small Gram/projector blocks this library analyzes;
/// cost is O(n^3) per sweep.
inline SymmetricEigen eigen_symmetric(const DenseMatrix& m, double tol = 1e-12,
                                      int max_sweeps = 64) {
  const int n = m.rows();
  if (n != m.cols()) {
    throw DimensionMismatchError("eigen_symmetric requires a square matrix");
  }
  DenseMatrix a = m;
  DenseMatrix v(n, n);
  for (int i = 0; i < n; ++i) v(i, i) = 1.0;

  double frob = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) frob += a(i, j) * a(i, j);
  frob = std::sqrt(frob);
  const double stop = tol * std::max(frob, 1.0e-300);

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += 2.0 * a(i, j) * a(i, j);
    if (std::sqrt(off) <= stop) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  SymmetricEigen out;
  out.values.resize(static_cast<std::size_t>(n));
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) < a(y, y); });
  out.vectors = DenseMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    const int src = order[static_cast<std::size_t>(j)];
    out.values[static_cast<std::size_t>(j)] = a(src, src);
    for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, src);
  }
  return out;
}

/// Convenience: eigenvalues only, ascending.
inline std::vector<double> eigenvalues_symmetric(const DenseMatrix& m, double tol = 1e-12) {
  return eigen_symmetric(m, tol).values;
}

}  // namespace nst
