#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "nst/core/matrix.hpp"
#include "nst/core/vec.hpp"

namespace nst {

/// Unpivoted Cholesky factorization of a symmetric positive definite matrix,
/// with a fail-fast relative pivot check: factorization is rejected as soon as
/// a pivot drops below `pivot_tol` times the largest diagonal entry of the
/// input. Callers map the failure onto their own error taxonomy
/// (rank-deficient row Gram vs. singular column submatrix).
class CholeskyFactor {
 public:
  static constexpr double kDefaultPivotTol = 1e-12;

  /// Returns the lower-triangular factor L with m = L L', or nullopt when a
  /// pivot fails the relative threshold. Only the lower triangle of m is read.
  static std::optional<CholeskyFactor> compute(const DenseMatrix& m,
                                               double pivot_tol = kDefaultPivotTol) {
    const int n = m.rows();
    if (n != m.cols()) return std::nullopt;

    double max_diag = 0.0;
    for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, m(i, i));
    const double threshold = pivot_tol * max_diag;

    CholeskyFactor f;
    f.lower_ = DenseMatrix(n, n);
    DenseMatrix& l = f.lower_;
    for (int j = 0; j < n; ++j) {
      double d = m(j, j) - dot(l.row(j), l.row(j), static_cast<std::size_t>(j));
      if (!(d > threshold) || !std::isfinite(d)) return std::nullopt;
      const double ljj = std::sqrt(d);
      l(j, j) = ljj;
      for (int i = j + 1; i < n; ++i) {
        const double off =
            m(i, j) - dot(l.row(i), l.row(j), static_cast<std::size_t>(j));
        l(i, j) = off / ljj;
      }
    }
    return f;
  }

  int size() const { return lower_.rows(); }
  const DenseMatrix& lower() const { return lower_; }

  /// Solves (L L') x = b.
  Vector solve(const Vector& b) const {
    const int n = size();
    if (static_cast<int>(b.size()) != n) {
      throw DimensionMismatchError("cholesky solve: rhs length mismatch");
    }
    Vector x(b);
    // Forward substitution L y = b.
    for (int i = 0; i < n; ++i) {
      x[i] = (x[i] - dot(lower_.row(i), x.data(), static_cast<std::size_t>(i))) / lower_(i, i);
    }
    // Back substitution L' x = y.
    for (int i = n - 1; i >= 0; --i) {
      double acc = x[i];
      for (int k = i + 1; k < n; ++k) acc -= lower_(k, i) * x[k];
      x[i] = acc / lower_(i, i);
    }
    return x;
  }

 private:
  DenseMatrix lower_;
};

}  // namespace nst
