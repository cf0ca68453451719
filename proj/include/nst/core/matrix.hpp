#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nst/core/errors.hpp"
#include "nst/core/vec.hpp"

namespace nst {

/// Dense real matrix, row-major storage, 64-bit entries.
///
/// Invariants established at construction: entries.size() == rows*cols and
/// every entry is finite. Mutating access through operator() is available to
/// kernels that build matrices incrementally; public entry points that accept
/// caller-provided data go through from_data(), which validates.
class DenseMatrix {
 public:
  DenseMatrix() = default;

  DenseMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(check_dims(rows, cols)) , 0.0) {}

  static DenseMatrix from_data(int rows, int cols, std::vector<double> entries) {
    const std::size_t expected = check_dims(rows, cols);
    if (entries.size() != expected) {
      throw DimensionMismatchError("matrix data length " + std::to_string(entries.size()) +
                                   " does not match " + std::to_string(rows) + "x" +
                                   std::to_string(cols));
    }
    for (double x : entries) {
      if (!std::isfinite(x)) {
        throw InvalidArgumentError("matrix contains a non-finite entry");
      }
    }
    DenseMatrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.entries_ = std::move(entries);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int r, int c) { return entries_[static_cast<std::size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const {
    return entries_[static_cast<std::size_t>(r) * cols_ + c];
  }

  /// Pointer to the contiguous row r.
  double* row(int r) { return entries_.data() + static_cast<std::size_t>(r) * cols_; }
  const double* row(int r) const { return entries_.data() + static_cast<std::size_t>(r) * cols_; }

  const std::vector<double>& data() const { return entries_; }
  std::vector<double>& data() { return entries_; }

  DenseMatrix transposed() const {
    DenseMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r) {
      const double* src = row(r);
      for (int c = 0; c < cols_; ++c) t(c, r) = src[c];
    }
    return t;
  }

  /// this * x for a dense x of length cols().
  Vector apply(const Vector& x) const {
    if (static_cast<int>(x.size()) != cols_) {
      throw DimensionMismatchError("matrix apply: vector length " + std::to_string(x.size()) +
                                   " vs cols " + std::to_string(cols_));
    }
    Vector y(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) y[static_cast<std::size_t>(r)] = dot(row(r), x.data(), x.size());
    return y;
  }

 private:
  static std::size_t check_dims(int rows, int cols) {
    if (rows < 0 || cols < 0) {
      throw DimensionMismatchError("matrix dimensions must be non-negative");
    }
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> entries_;
};

/// a * b (row-major naive product; operands are small in this library).
inline DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatchError("matrix product: inner dimensions " + std::to_string(a.cols()) +
                                 " and " + std::to_string(b.rows()) + " differ");
  }
  DenseMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    const double* arow = a.row(i);
    double* crow = c.row(i);
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = arow[k];
      if (aik == 0.0) continue;
      const double* brow = b.row(k);
      for (int j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

/// Orthonormalizes the rows of m in place with modified Gram-Schmidt plus one
/// reorthogonalization pass. Requires rows() <= cols() and full row rank.
inline void orthonormalize_rows(DenseMatrix& m) {
  if (m.rows() > m.cols()) {
    throw DimensionMismatchError("orthonormalize_rows requires rows <= cols");
  }
  const std::size_t n = static_cast<std::size_t>(m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    double* ri = m.row(i);
    for (int pass = 0; pass < 2; ++pass) {
      for (int j = 0; j < i; ++j) {
        const double* rj = m.row(j);
        const double proj = dot(ri, rj, n);
        for (std::size_t k = 0; k < n; ++k) ri[k] -= proj * rj[k];
      }
    }
    const double nrm = std::sqrt(dot(ri, ri, n));
    if (nrm < 1e-12) {
      throw RankDeficientError("orthonormalize_rows: row " + std::to_string(i) +
                               " is (numerically) in the span of earlier rows");
    }
    for (std::size_t k = 0; k < n; ++k) ri[k] /= nrm;
  }
}

}  // namespace nst
