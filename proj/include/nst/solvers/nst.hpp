#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "nst/core/operator.hpp"
#include "nst/core/spectral.hpp"
#include "nst/core/vec.hpp"
#include "nst/solvers/result.hpp"
#include "nst/sparsity.hpp"

namespace nst {

/// The least-squares (minimum-norm) feasible point A*(AA*)^{-1} b; every
/// solver in the null-space-tuning family starts here unless a warm start is
/// supplied.
inline Vector initial_iterate(const MeasurementOperator& op, const Vector& b) {
  if (static_cast<int>(b.size()) != op.rows()) {
    throw DimensionMismatchError("initial_iterate: rhs length must equal operator rows");
  }
  ensure_finite(b, "rhs");
  return op.apply_pinv(b);
}

/// One null-space-tuning step x + P(u - x), with P the orthogonal projector
/// onto ker A: the result is the closest feasible point to u, and for
/// feasible x it equals u + A*(AA*)^{-1}(b - A u) regardless of which
/// feasible x is supplied.
inline Vector nst_step(const MeasurementOperator& op, const Vector& b, const Vector& u,
                       const Vector& x) {
  if (static_cast<int>(b.size()) != op.rows()) {
    throw DimensionMismatchError("nst_step: rhs length must equal operator rows");
  }
  ensure_same_size(u, x, "nst_step");
  if (static_cast<int>(u.size()) != op.cols()) {
    throw DimensionMismatchError("nst_step: iterate length must equal operator columns");
  }
  const Vector w = subtract(u, x);
  Vector tail = op.apply_pinv(op.apply(w));  // component of u - x outside ker A
  Vector out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i] + w[i] - tail[i];
  return out;
}

namespace detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Relative residual of an approximation u given A u. A zero rhs norm falls
/// back to "zero residual or infinite".
inline double relative_residual(const Vector& au, const Vector& b, double norm_b) {
  const double r = distance2(au, b);
  if (norm_b > 0.0) return r / norm_b;
  return r == 0.0 ? 0.0 : kInf;
}

/// Shared driver for the null-space-tuning family. Per pass k it computes the
/// feasible iterate x^k (projecting the previous approximation back onto
/// {z : A z = b}), lets `approximate` build the sparse approximation u^k from
/// (x^k, T_k), and then applies the stopping rules in this order: residual
/// below eps1, relative change below eps2 (skipped at k = 0), repeated
/// support (feedback solver only, where a repeated support provably freezes
/// the iteration), iteration budget. A SingularSubmatrixError raised by
/// `approximate` mid-run is reported as a Failed result, not rethrown.
template <typename ApproximateFn>
RecoveryResult run_nst_family(const MeasurementOperator& op, const Vector& b,
                              const SolverConfig& cfg, const std::optional<Vector>& x0,
                              const IterationObserver& observer, ApproximateFn&& approximate,
                              bool detect_fixed_support) {
  cfg.validate();
  if (cfg.s > op.cols()) {
    throw InvalidArgumentError("sparsity s = " + std::to_string(cfg.s) +
                               " exceeds operator columns " + std::to_string(op.cols()));
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
    // Project onto {z : A z = b}; identity (up to roundoff) for feasible input.
    Vector corr = op.apply_pinv(subtract(b, op.apply(*x0)));
    x = *x0;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += corr[i];
  } else {
    x = op.apply_pinv(b);
  }

  const auto track_feasibility = [&](const Vector& iterate) {
    if (!cfg.check_feasibility) return;
    const double feas = relative_residual(op.apply(iterate), b, norm_b);
    result.max_feasibility_rel = std::max(result.max_feasibility_rel, feas);
  };
  track_feasibility(x);

  Vector u;
  Vector u_prev;
  Vector residual;  // b - A u from the previous pass
  SupportSet support;
  SupportSet support_prev;
  bool has_prev = false;
  double residual_rel = kInf;
  double change_rel = kInf;
  Termination termination = Termination::kMaxIters;

  int k = 0;
  for (; k < cfg.max_iters; ++k) {
    if (k > 0) {
      // x^k = u^{k-1} + A*(AA*)^{-1}(b - A u^{k-1}); the residual was already
      // computed for the previous stopping test.
      Vector corr = op.apply_pinv(residual);
      for (std::size_t i = 0; i < corr.size(); ++i) corr[i] += u[i];
      x = std::move(corr);
      track_feasibility(x);
      u_prev = std::move(u);
      support_prev = std::move(support);
      has_prev = true;
    }

    support = select_support(x, cfg.s);
    try {
      u = approximate(x, support);
    } catch (const SingularSubmatrixError& e) {
      termination = Termination::kFailed;
      result.failure_reason = e.what();
      u = restrict_to_support(x, support);  // best effort: feedback-free truncation
      break;
    }
    const Vector au = op.apply_on_support(u, support);
    residual_rel = relative_residual(au, b, norm_b);
    if (has_prev) {
      const double denom = norm2(u_prev);
      change_rel = denom > 0.0 ? distance2(u, u_prev) / denom : kInf;
    } else {
      change_rel = kInf;
    }

    if (cfg.trace) result.trace.push_back({k, residual_rel, change_rel, support});
    if (observer) observer(SolverState{k, x, u, u_prev, support, residual_rel, change_rel});

    if (!std::isfinite(residual_rel) && norm_b > 0.0) {
      termination = Termination::kFailed;
      result.failure_reason = "non-finite residual";
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
    if (detect_fixed_support && has_prev && support == support_prev) {
      termination = Termination::kSupportFixed;
      break;
    }

    residual = subtract(b, au);
  }

  result.iterations = (k < cfg.max_iters) ? k + 1 : cfg.max_iters;
  result.residual_rel = residual_rel;
  result.termination = termination;
  result.u = std::move(u);
  result.x = std::move(x);
  return result;
}

}  // namespace detail

/// Null-space tuning with plain hard thresholding: u^k keeps the s
/// largest-magnitude entries of x^k.
inline RecoveryResult solve_nst_ht(const MeasurementOperator& op, const Vector& b,
                                   const SolverConfig& cfg,
                                   const std::optional<Vector>& x0 = std::nullopt,
                                   const IterationObserver& observer = {}) {
  return detail::run_nst_family(
      op, b, cfg, x0, observer,
      [](const Vector& x, const SupportSet& support) { return restrict_to_support(x, support); },
      /*detect_fixed_support=*/false);
}

namespace detail {

/// Feedback term: least-squares coefficients of the off-support contribution
/// A_{T^c} x_{T^c} against the on-support columns. Because x is feasible,
/// A_{T^c} x_{T^c} = b - A_T x_T, which costs rows()*|T| instead of
/// rows()*(cols()-|T|).
inline Vector feedback_coefficients(const MeasurementOperator& op, const Vector& b,
                                    const Vector& x, const SupportSet& support) {
  const Vector on_support = op.apply_on_support(x, support);
  return lsq_submatrix(op, support, subtract(b, on_support));
}

}  // namespace detail

/// Null-space tuning with hard thresholding and full feedback: the discarded
/// tail's contribution is folded back into the kept coefficients through a
/// least-squares fit, u^k_T = x^k_T + (A_T*A_T)^{-1} A_T* A_{T^c} x^k_{T^c}.
/// Terminates additionally when the selected support repeats, which provably
/// freezes the iteration.
inline RecoveryResult solve_nst_ht_fb(const MeasurementOperator& op, const Vector& b,
                                      const SolverConfig& cfg,
                                      const std::optional<Vector>& x0 = std::nullopt,
                                      const IterationObserver& observer = {}) {
  if (cfg.s > op.rows()) {
    throw InvalidArgumentError("feedback solver requires s <= rows (invertible Gram)");
  }
  return detail::run_nst_family(
      op, b, cfg, x0, observer,
      [&op, &b](const Vector& x, const SupportSet& support) {
        const Vector eta = detail::feedback_coefficients(op, b, x, support);
        Vector u = restrict_to_support(x, support);
        for (int i = 0; i < support.size(); ++i) {
          u[static_cast<std::size_t>(support[i])] += eta[static_cast<std::size_t>(i)];
        }
        return u;
      },
      /*detect_fixed_support=*/true);
}

/// Null-space tuning with scaled (partial) feedback: the feedback term is
/// multiplied by lambda. The admissible range is lambda <= 1/||A_T*A_T||_2;
/// with cfg.lambda_spectral the bound itself is used each iteration,
/// otherwise cfg.lambda (default 1) applies. The scaled feedback is applied
/// directly as lambda * A_T* A_{T^c} x_{T^c}; no Gram inversion is performed.
inline RecoveryResult solve_nst_ht_subfb(const MeasurementOperator& op, const Vector& b,
                                         const SolverConfig& cfg,
                                         const std::optional<Vector>& x0 = std::nullopt,
                                         const IterationObserver& observer = {}) {
  return detail::run_nst_family(
      op, b, cfg, x0, observer,
      [&op, &b, &cfg](const Vector& x, const SupportSet& support) {
        double lambda = cfg.lambda;
        if (cfg.lambda_spectral) {
          const double gram_norm = spectral_norm(gram_submatrix(op, support)).value;
          lambda = gram_norm > 0.0 ? 1.0 / gram_norm : 1.0;
        }
        // A_T* A_{T^c} x_{T^c} = A_T* (b - A_T x_T) by feasibility of x.
        const Vector tail = subtract(b, op.apply_on_support(x, support));
        Vector u = restrict_to_support(x, support);
        for (int i = 0; i < support.size(); ++i) {
          const double corr = dot(op.column(support[i]), tail.data(), tail.size());
          u[static_cast<std::size_t>(support[i])] += lambda * corr;
        }
        return u;
      },
      /*detect_fixed_support=*/false);
}

/// Null-space tuning with stretched hard thresholding: u^k = theta^k T_s(x^k)
/// with theta^k = ||b||_1 / ||A_T x^k_T||_1 (theta = 1 when the denominator is
/// negligible relative to ||b||_1).
inline RecoveryResult solve_nst_stretched_ht(const MeasurementOperator& op, const Vector& b,
                                             const SolverConfig& cfg,
                                             const std::optional<Vector>& x0 = std::nullopt,
                                             const IterationObserver& observer = {}) {
  const double norm1_b = norm1(b);
  return detail::run_nst_family(
      op, b, cfg, x0, observer,
      [&op, norm1_b](const Vector& x, const SupportSet& support) {
        Vector u = restrict_to_support(x, support);
        const double denom = norm1(op.apply_on_support(u, support));
        const double theta = (denom <= 1e-14 * norm1_b) ? 1.0 : norm1_b / denom;
        scale_in_place(u, theta);
        return u;
      },
      /*detect_fixed_support=*/false);
}

}  // namespace nst
