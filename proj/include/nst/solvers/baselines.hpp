#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nst/core/operator.hpp"
#include "nst/core/vec.hpp"
#include "nst/solvers/nst.hpp"
#include "nst/solvers/result.hpp"
#include "nst/sparsity.hpp"

namespace nst {

namespace detail {

/// Residual magnitude beyond which a non-feasible baseline is declared
/// divergent (IHT/HTP have no step-size safeguard here, matching their
/// textbook forms, and genuinely blow up outside their convergence regime).
inline constexpr double kDivergenceGuard = 1e12;

}  // namespace detail

/// Iterative hard thresholding with unit step size:
/// u^k = T_s(x^k), x^{k+1} = u^k + A*(b - A u^k). Shares the stopping
/// contract of the null-space-tuning family but its iterates are NOT feasible
/// in general; on Parseval frames (AA* = I) the iteration coincides with
/// null-space tuning plus hard thresholding.
inline RecoveryResult solve_iht(const MeasurementOperator& op, const Vector& b,
                                const SolverConfig& cfg,
                                const std::optional<Vector>& x0 = std::nullopt,
                                const IterationObserver& observer = {}) {
  cfg.validate();
  if (cfg.s > op.cols()) {
    throw InvalidArgumentError("sparsity s exceeds operator columns");
  }
  if (static_cast<int>(b.size()) != op.rows()) {
    throw DimensionMismatchError("rhs length must equal operator rows");
  }
  ensure_finite(b, "rhs");

  const double norm_b = norm2(b);
  RecoveryResult result;

  Vector x;
  if (x0) {
    if (static_cast<int>(x0->size()) != op.cols()) {
      throw DimensionMismatchError("warm start length must equal operator columns");
    }
    ensure_finite(*x0, "warm start");
    x = *x0;
  } else {
    x = op.apply_pinv(b);
  }

  Vector u;
  Vector u_prev;
  Vector residual;
  SupportSet support;
  bool has_prev = false;
  double residual_rel = detail::kInf;
  double change_rel = detail::kInf;
  Termination termination = Termination::kMaxIters;

  int k = 0;
  for (; k < cfg.max_iters; ++k) {
    if (k > 0) {
      Vector corr = op.apply_adjoint(residual);
      for (std::size_t i = 0; i < corr.size(); ++i) corr[i] += u[i];
      x = std::move(corr);
      u_prev = std::move(u);
      has_prev = true;
    }

    support = select_support(x, cfg.s);
    u = restrict_to_support(x, support);
    const Vector au = op.apply_on_support(u, support);
    residual_rel = detail::relative_residual(au, b, norm_b);
    if (has_prev) {
      const double denom = norm2(u_prev);
      change_rel = denom > 0.0 ? distance2(u, u_prev) / denom : detail::kInf;
    } else {
      change_rel = detail::kInf;
    }

    if (cfg.trace) result.trace.push_back({k, residual_rel, change_rel, support});
    if (observer) observer(SolverState{k, x, u, u_prev, support, residual_rel, change_rel});

    if (!std::isfinite(residual_rel) || residual_rel > detail::kDivergenceGuard) {
      termination = Termination::kFailed;
      result.failure_reason = "diverged";
      break;
    }
    if (residual_rel < cfg.eps1) {
      termination = Termination::kResidualMet;
      break;
    }
    if (change_rel < cfg.eps2) {
      termination = Termination::kStagnated;
      break;
    }

    residual = subtract(b, au);
  }

  result.iterations = (k < cfg.max_iters) ? k + 1 : cfg.max_iters;
  result.residual_rel = residual_rel;
  result.termination = termination;
  result.u = std::move(u);
  result.x = result.u;  // baselines carry no separate feasible iterate
  return result;
}

namespace detail {

/// Index of the largest-magnitude correlation, preferring the smallest index
/// on ties and skipping already-picked indices.
inline int argmax_correlation(const Vector& c, const std::vector<bool>& picked) {
  int best = -1;
  double best_mag = -1.0;
  for (int i = 0; i < static_cast<int>(c.size()); ++i) {
    if (picked[static_cast<std::size_t>(i)]) continue;
    const double mag = std::abs(c[static_cast<std::size_t>(i)]);
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  return best;
}

}  // namespace detail

/// Orthogonal matching pursuit: greedily adds the column most correlated with
/// the residual and least-squares refits on the accumulated support. Runs
/// exactly s picks (the comparison protocol caps it there), stopping early
/// only when the residual is numerically zero or orthogonal to every column.
inline RecoveryResult solve_omp(const MeasurementOperator& op, const Vector& b, int s) {
  if (s < 0 || s > op.rows()) {
    throw InvalidArgumentError("omp: s must lie in [0, rows]");
  }
  if (static_cast<int>(b.size()) != op.rows()) {
    throw DimensionMismatchError("rhs length must equal operator rows");
  }
  ensure_finite(b, "rhs");

  const double norm_b = norm2(b);
  const int big_n = op.cols();

  RecoveryResult result;
  std::vector<bool> picked_mask(static_cast<std::size_t>(big_n), false);
  std::vector<int> picked;
  Vector coeffs;
  Vector r = b;
  Termination termination = Termination::kMaxIters;

  for (int j = 0; j < s; ++j) {
    if (norm2(r) == 0.0) break;
    const Vector c = op.apply_adjoint(r);
    const int best = detail::argmax_correlation(c, picked_mask);
    if (best < 0 || c[static_cast<std::size_t>(best)] == 0.0) {
      termination = Termination::kStagnated;  // residual orthogonal to all columns
      break;
    }
    picked_mask[static_cast<std::size_t>(best)] = true;
    picked.push_back(best);
    const SupportSet support(picked, big_n);
    coeffs = lsq_submatrix(op, support, b);
    r = subtract(b, op.apply_on_support(scatter(coeffs, support), support));
    result.iterations = j + 1;
    if (norm2(r) < 1e-12 * std::max(norm_b, 1.0)) break;  // numerically exact fit
  }

  const SupportSet support(picked, big_n);
  result.u = picked.empty() ? Vector(static_cast<std::size_t>(big_n), 0.0)
                            : scatter(coeffs, support);
  result.x = result.u;
  result.residual_rel = detail::relative_residual(op.apply_on_support(result.u, support), b,
                                                  norm_b);
  if (result.residual_rel < 1e-10) termination = Termination::kResidualMet;
  result.termination = termination;
  return result;
}

/// Subspace pursuit: keeps a size-s support, each round expanding it with the
/// s indices most correlated with the residual, refitting on the union,
/// shrinking back to the s largest coefficients, and accepting the move only
/// if the residual decreased.
inline RecoveryResult solve_sp(const MeasurementOperator& op, const Vector& b, int s,
                               const SolverConfig& cfg) {
  cfg.validate();
  if (s < 1 || s > op.rows()) {
    throw InvalidArgumentError("sp: s must lie in [1, rows]");
  }
  if (static_cast<int>(b.size()) != op.rows()) {
    throw DimensionMismatchError("rhs length must equal operator rows");
  }
  ensure_finite(b, "rhs");

  const double norm_b = norm2(b);
  const int big_n = op.cols();

  RecoveryResult result;
  SupportSet support = select_support(op.apply_adjoint(b), s);
  Vector coeffs = lsq_submatrix(op, support, b);
  Vector r = subtract(b, op.apply_on_support(scatter(coeffs, support), support));
  double r_norm = norm2(r);
  result.iterations = 1;
  Termination termination = Termination::kMaxIters;

  for (int it = 1; it < cfg.max_iters; ++it) {
    if (r_norm < cfg.eps1 * (norm_b > 0.0 ? norm_b : 1.0)) {
      termination = Termination::kResidualMet;
      break;
    }

    // Expand with the s strongest residual correlations (union may overlap).
    const SupportSet extra = select_support(op.apply_adjoint(r), s);
    std::vector<int> merged = support.indices();
    for (int idx : extra.indices()) {
      if (!support.contains(idx)) merged.push_back(idx);
    }
    const SupportSet candidate(std::move(merged), big_n);

    const Vector wide = lsq_submatrix(op, candidate, b);
    const SupportSet shrunk = select_support(scatter(wide, candidate), s);
    const Vector refit = lsq_submatrix(op, shrunk, b);
    const Vector r_new = subtract(b, op.apply_on_support(scatter(refit, shrunk), shrunk));
    const double r_new_norm = norm2(r_new);
    result.iterations = it + 1;

    if (r_new_norm >= r_norm) {
      termination = Termination::kStagnated;  // keep the previous support
      break;
    }
    support = shrunk;
    coeffs = refit;
    r = r_new;
    r_norm = r_new_norm;
  }

  if (termination == Termination::kMaxIters &&
      r_norm < cfg.eps1 * (norm_b > 0.0 ? norm_b : 1.0)) {
    termination = Termination::kResidualMet;
  }
  result.u = scatter(coeffs, support);
  result.x = result.u;
  result.residual_rel = norm_b > 0.0 ? r_norm / norm_b : (r_norm == 0.0 ? 0.0 : detail::kInf);
  result.termination = termination;
  return result;
}

/// Hard thresholding pursuit with unit step size: gradient step, support
/// selection, then a least-squares refit on the support. Stops when the
/// support repeats (the iteration is then stationary), on the residual
/// tolerance, or on the budget.
inline RecoveryResult solve_htp(const MeasurementOperator& op, const Vector& b, int s,
                                const SolverConfig& cfg) {
  cfg.validate();
  if (s < 1 || s > op.rows()) {
    throw InvalidArgumentError("htp: s must lie in [1, rows]");
  }
  if (static_cast<int>(b.size()) != op.rows()) {
    throw DimensionMismatchError("rhs length must equal operator rows");
  }
  ensure_finite(b, "rhs");

  const double norm_b = norm2(b);
  const int big_n = op.cols();

  RecoveryResult result;
  Vector x(static_cast<std::size_t>(big_n), 0.0);
  SupportSet support_prev;
  bool has_prev = false;
  double residual_rel = detail::kInf;
  Termination termination = Termination::kMaxIters;

  int k = 0;
  for (; k < cfg.max_iters; ++k) {
    Vector g = op.apply_adjoint(subtract(b, op.apply(x)));
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += x[i];
    const SupportSet support = select_support(g, s);
    const Vector coeffs = lsq_submatrix(op, support, b);
    Vector u = scatter(coeffs, support);
    residual_rel =
        detail::relative_residual(op.apply_on_support(u, support), b, norm_b);

    result.u = std::move(u);
    result.iterations = k + 1;
    if (!std::isfinite(residual_rel) || residual_rel > detail::kDivergenceGuard) {
      termination = Termination::kFailed;
      result.failure_reason = "diverged";
      break;
    }
    if (residual_rel < cfg.eps1) {
      termination = Termination::kResidualMet;
      break;
    }
    if (has_prev && support == support_prev) {
      termination = Termination::kSupportFixed;
      break;
    }
    x = result.u;
    support_prev = support;
    has_prev = true;
  }

  result.x = result.u;
  result.residual_rel = residual_rel;
  result.termination = termination;
  return result;
}

}  // namespace nst
