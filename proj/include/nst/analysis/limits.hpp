#pragma once

#include <cstddef>
#include <vector>

#include "nst/core/errors.hpp"
#include "nst/core/operator.hpp"
#include "nst/core/vec.hpp"
#include "nst/sparsity.hpp"

namespace nst {

/// Closed-form destinations of the two fixed-support iterations started from
/// the same x_j on support T: x_natural is the limit of the plain
/// hard-threshold iteration (Parseval frames only), x_ddag the exact fixed
/// point the feedback iteration reaches in one step (any frame). On Parseval
/// frames the two coincide.
struct FixedSupportLimit {
  Vector x_natural;
  Vector x_ddag;
  SupportSet support;
};

namespace detail {

/// Shared pieces of both closed forms, all expressed through the off-support
/// leakage w = A_{T^c} x_{T^c}:
///   eta = (A_T* A_T)^{-1} A_T* w   (on-support correction)
///   q   = w - A_T eta              (leakage component A_T cannot explain)
struct LimitParts {
  Vector w;
  Vector eta;
  Vector q;
};

inline LimitParts limit_parts(const MeasurementOperator& op, const SupportSet& t,
                              const Vector& x_j) {
  if (static_cast<int>(x_j.size()) != op.cols()) {
    throw DimensionMismatchError("fixed-support limit: vector length must equal columns");
  }
  ensure_finite(x_j, "fixed-support input");

  LimitParts parts;
  Vector off = x_j;
  for (int idx : t.indices()) off[static_cast<std::size_t>(idx)] = 0.0;
  parts.w = op.apply(off);
  parts.eta = lsq_submatrix(op, t, parts.w);
  parts.q = subtract(parts.w, op.apply_on_support(scatter(parts.eta, t), t));
  return parts;
}

}  // namespace detail

/// Limit of the hard-threshold iteration when the selected support is pinned
/// to T: the on-support block absorbs the Gram-corrected leakage, the
/// off-support block is the raw correlation of each outside column with the
/// unexplained leakage component. Valid only when AA* = I (the geometric
/// contraction behind the limit needs it), hence the Parseval gate.
inline Vector fixed_support_limit_ht(const MeasurementOperator& op, const SupportSet& t,
                                     const Vector& x_j) {
  if (!op.is_parseval()) {
    throw NotParsevalError("hard-threshold fixed-support limit requires AA* = I");
  }
  const detail::LimitParts parts = detail::limit_parts(op, t, x_j);

  Vector out(static_cast<std::size_t>(op.cols()), 0.0);
  const std::vector<int>& idx = t.indices();
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out[static_cast<std::size_t>(idx[i])] =
        x_j[static_cast<std::size_t>(idx[i])] + parts.eta[i];
  }
  const std::size_t n = static_cast<std::size_t>(op.rows());
  for (int j = 0; j < op.cols(); ++j) {
    if (t.contains(j)) continue;
    out[static_cast<std::size_t>(j)] = dot(op.column(j), parts.q.data(), n);
  }
  return out;
}

/// Exact fixed point of the feedback iteration on pinned support T for a
/// general full-row-rank frame: one step from x_j lands here and stays. The
/// off-support block reads the unexplained leakage through the row-Gram
/// inverse; the on-support block adds the matching correction.
inline Vector fixed_support_limit_fb(const MeasurementOperator& op, const SupportSet& t,
                                     const Vector& x_j) {
  const detail::LimitParts parts = detail::limit_parts(op, t, x_j);
  const Vector z = op.solve_row_gram(parts.q);

  Vector out(static_cast<std::size_t>(op.cols()), 0.0);
  const std::vector<int>& idx = t.indices();
  const std::size_t n = static_cast<std::size_t>(op.rows());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out[static_cast<std::size_t>(idx[i])] = x_j[static_cast<std::size_t>(idx[i])] +
                                            parts.eta[i] +
                                            dot(op.column(idx[i]), z.data(), n);
  }
  for (int j = 0; j < op.cols(); ++j) {
    if (t.contains(j)) continue;
    out[static_cast<std::size_t>(j)] = dot(op.column(j), z.data(), n);
  }
  return out;
}

/// Both closed forms from one input (Parseval frames; this is the setting
/// where comparing them is meaningful).
inline FixedSupportLimit fixed_support_limits(const MeasurementOperator& op,
                                              const SupportSet& t, const Vector& x_j) {
  FixedSupportLimit out;
  out.support = t;
  out.x_natural = fixed_support_limit_ht(op, t, x_j);
  out.x_ddag = fixed_support_limit_fb(op, t, x_j);
  return out;
}

}  // namespace nst
