#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "nst/core/cholesky.hpp"
#include "nst/core/errors.hpp"
#include "nst/core/matrix.hpp"
#include "nst/core/vec.hpp"
#include "nst/sparsity.hpp"

namespace nst {

/// An underdetermined measurement matrix A (n x N, n <= N) together with the
/// factorizations the solvers reuse every iteration:
///
///  - a transposed copy, so columns of A are contiguous,
///  - the Cholesky factor of the row Gram matrix AA*,
///  - the cached min-norm applier A*(AA*)^{-1} (N x n). The orthogonal
///    projector onto ker A is never materialized (it would be N x N);
///    projecting z costs two cached matrix-vector products instead.
///
/// Construction fails with RankDeficientError when AA* is numerically rank
/// deficient (Cholesky pivot below 1e-12 relative to the largest diagonal).
class MeasurementOperator {
 public:
  static MeasurementOperator build(DenseMatrix a) {
    const int n = a.rows();
    const int big_n = a.cols();
    if (n < 1 || big_n < n) {
      throw DimensionMismatchError("measurement operator must have 1 <= rows <= cols, got " +
                                   std::to_string(n) + "x" + std::to_string(big_n));
    }

    MeasurementOperator op;
    op.a_ = std::move(a);
    op.at_ = op.a_.transposed();

    op.row_gram_ = DenseMatrix(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j <= i; ++j) {
        const double g = dot(op.a_.row(i), op.a_.row(j), static_cast<std::size_t>(big_n));
        op.row_gram_(i, j) = g;
        op.row_gram_(j, i) = g;
      }
    }

    auto chol = CholeskyFactor::compute(op.row_gram_);
    if (!chol) {
      throw RankDeficientError("row Gram matrix AA* is numerically rank deficient");
    }
    op.row_gram_chol_ = std::move(*chol);

    // Row j of the applier is (AA*)^{-1} a_j, exploiting symmetry of (AA*)^{-1}.
    op.pinv_ = DenseMatrix(big_n, n);
    Vector col(static_cast<std::size_t>(n));
    for (int j = 0; j < big_n; ++j) {
      const double* aj = op.at_.row(j);
      std::copy(aj, aj + n, col.begin());
      const Vector w = op.row_gram_chol_.solve(col);
      std::copy(w.begin(), w.end(), op.pinv_.row(j));
    }
    return op;
  }

  int rows() const { return a_.rows(); }
  int cols() const { return a_.cols(); }

  const DenseMatrix& matrix() const { return a_; }
  const DenseMatrix& row_gram() const { return row_gram_; }

  /// Contiguous column j of A (length rows()).
  const double* column(int j) const { return at_.row(j); }

  /// Contiguous row j of the cached applier A*(AA*)^{-1}: equals (AA*)^{-1} a_j.
  const double* pinv_row(int j) const { return pinv_.row(j); }

  /// A x for dense x.
  Vector apply(const Vector& x) const { return a_.apply(x); }

  /// A x reading only the entries of x on the support (x's off-support
  /// entries are ignored, so this is A_T x_T at cost rows()*|T|).
  Vector apply_on_support(const Vector& x, const SupportSet& support) const {
    if (static_cast<int>(x.size()) != cols()) {
      throw DimensionMismatchError("apply_on_support: vector length mismatch");
    }
    Vector y(static_cast<std::size_t>(rows()), 0.0);
    for (int j : support.indices()) {
      const double xj = x[static_cast<std::size_t>(j)];
      if (xj == 0.0) continue;
      const double* aj = column(j);
      for (int r = 0; r < rows(); ++r) y[static_cast<std::size_t>(r)] += xj * aj[r];
    }
    return y;
  }

  /// A* y.
  Vector apply_adjoint(const Vector& y) const { return at_.apply(y); }

  /// A*(AA*)^{-1} y through the cached applier.
  Vector apply_pinv(const Vector& y) const { return pinv_.apply(y); }

  /// (AA*)^{-1} y.
  Vector solve_row_gram(const Vector& y) const { return row_gram_chol_.solve(y); }

  /// Whether AA* = I within tol (max absolute deviation), i.e. the rows form
  /// a Parseval frame.
  bool is_parseval(double tol = 1e-10) const {
    for (int i = 0; i < rows(); ++i) {
      for (int j = 0; j < rows(); ++j) {
        const double target = (i == j) ? 1.0 : 0.0;
        if (std::abs(row_gram_(i, j) - target) > tol) return false;
      }
    }
    return true;
  }

 private:
  DenseMatrix a_;
  DenseMatrix at_;
  DenseMatrix row_gram_;
  CholeskyFactor row_gram_chol_;
  DenseMatrix pinv_;
};

/// Orthogonal projection of z onto ker A: z - A*(AA*)^{-1} A z.
inline Vector project_nullspace(const MeasurementOperator& op, const Vector& z) {
  Vector out = op.apply_pinv(op.apply(z));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = z[i] - out[i];
  return out;
}

/// The column-submatrix Gram matrix A_T* A_T (|T| x |T|).
inline DenseMatrix gram_submatrix(const MeasurementOperator& op, const SupportSet& support) {
  const int s = support.size();
  const std::size_t n = static_cast<std::size_t>(op.rows());
  DenseMatrix g(s, s);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j <= i; ++j) {
      const double v = dot(op.column(support[i]), op.column(support[j]), n);
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

/// Least-squares coefficients of rhs against the columns in `support`:
/// (A_T* A_T)^{-1} A_T* rhs, returned compactly (ordered by ascending index).
/// Throws SingularSubmatrixError when the submatrix Gram fails the Cholesky
/// pivot threshold.
inline Vector lsq_submatrix(const MeasurementOperator& op, const SupportSet& support,
                            const Vector& rhs) {
  if (static_cast<int>(rhs.size()) != op.rows()) {
    throw DimensionMismatchError("lsq_submatrix: rhs length must equal operator rows");
  }
  if (support.size() == 0) return {};
  const DenseMatrix g = gram_submatrix(op, support);
  auto chol = CholeskyFactor::compute(g);
  if (!chol) {
    throw SingularSubmatrixError("column submatrix Gram (size " +
                                 std::to_string(support.size()) +
                                 ") is numerically singular");
  }
  Vector c(static_cast<std::size_t>(support.size()));
  for (int i = 0; i < support.size(); ++i) {
    c[static_cast<std::size_t>(i)] =
        dot(op.column(support[i]), rhs.data(), rhs.size());
  }
  return chol->solve(c);
}

}  // namespace nst
