#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>

#include "nst/core/operator.hpp"
#include "nst/core/vec.hpp"
#include "nst/solvers/nst.hpp"
#include "nst/solvers/result.hpp"

namespace nst {

/// Which member of the null-space-tuning family the adaptive wrapper drives.
enum class NstVariant {
  kHardThreshold,
  kHardThresholdFeedback,
  kHardThresholdSubFeedback,
  kStretchedHardThreshold,
};

inline const char* to_string(NstVariant v) {
  switch (v) {
    case NstVariant::kHardThreshold: return "nst_ht";
    case NstVariant::kHardThresholdFeedback: return "nst_ht_fb";
    case NstVariant::kHardThresholdSubFeedback: return "nst_ht_subfb";
    case NstVariant::kStretchedHardThreshold: return "nst_stretched_ht";
  }
  return "unknown";
}

/// Configuration for the adaptive-sparsity outer loop: start at a deliberate
/// underestimate s0, run the wrapped solver to its own stopping rule, and
/// grow the working sparsity by s_step (warm-starting from the previous
/// feasible iterate) until the tolerances are met or the cap s_max is hit.
struct AdaptiveConfig {
  int s0 = 1;
  int s_step = 1;
  int s_max = 1;
  SolverConfig inner;
  NstVariant variant = NstVariant::kHardThreshold;

  void validate() const {
    if (s0 < 1) throw InvalidArgumentError("adaptive: s0 must be positive");
    if (s_step < 1) throw InvalidArgumentError("adaptive: s_step must be >= 1");
    if (s0 > s_max) throw InvalidArgumentError("adaptive: s0 must not exceed s_max");
    inner.validate();
  }
};

namespace detail {

inline RecoveryResult run_variant(const MeasurementOperator& op, const Vector& b,
                                  const SolverConfig& cfg, NstVariant variant,
                                  const std::optional<Vector>& x0,
                                  const IterationObserver& observer) {
  switch (variant) {
    case NstVariant::kHardThreshold:
      return solve_nst_ht(op, b, cfg, x0, observer);
    case NstVariant::kHardThresholdFeedback:
      return solve_nst_ht_fb(op, b, cfg, x0, observer);
    case NstVariant::kHardThresholdSubFeedback:
      return solve_nst_ht_subfb(op, b, cfg, x0, observer);
    case NstVariant::kStretchedHardThreshold:
      return solve_nst_stretched_ht(op, b, cfg, x0, observer);
  }
  throw InvalidArgumentError("adaptive: unknown variant");
}

}  // namespace detail

/// Adaptive-sparsity driver. Runs the selected variant at s = s0 and, while
/// the relative residual and the change between successive outer iterates
/// both stay above the tolerances and the next sparsity still fits under the
/// cap, re-runs at s + s_step warm-started from the previous feasible
/// iterate. Returns the last inner result with iterations summed and traces
/// concatenated under a global iteration index. Exhausting the cap without
/// meeting a tolerance is reported as MaxIters, not as an error.
inline RecoveryResult solve_adaptive(const MeasurementOperator& op, const Vector& b,
                                     const AdaptiveConfig& acfg,
                                     const IterationObserver& observer = {}) {
  acfg.validate();

  int s = acfg.s0;
  int iteration_offset = 0;
  bool capped = false;

  SolverConfig cfg = acfg.inner;
  cfg.s = s;

  IterationObserver shifted;
  if (observer) {
    shifted = [&](const SolverState& st) {
      SolverState global = st;
      global.iter += iteration_offset;
      observer(global);
    };
  }

  RecoveryResult result = detail::run_variant(op, b, cfg, acfg.variant, std::nullopt, shifted);
  double max_feasibility = result.max_feasibility_rel;

  while (result.termination != Termination::kFailed) {
    const bool residual_pending = result.residual_rel >= cfg.eps1;
    if (!residual_pending) break;
    if (s + acfg.s_step > acfg.s_max) {
      capped = true;
      break;
    }

    s += acfg.s_step;
    cfg.s = s;
    // result.iterations is cumulative across levels: it is exactly the
    // global index the next inner run's pass 0 must map to.
    iteration_offset = result.iterations;
    RecoveryResult prev = std::move(result);

    result = detail::run_variant(op, b, cfg, acfg.variant, prev.x, shifted);

    // Global bookkeeping: cumulative iteration count, concatenated trace,
    // worst feasibility violation seen across all inner runs.
    for (TraceEntry& entry : result.trace) entry.iter += iteration_offset;
    prev.trace.insert(prev.trace.end(), result.trace.begin(), result.trace.end());
    result.trace = std::move(prev.trace);
    result.iterations += iteration_offset;
    max_feasibility = std::max(max_feasibility, result.max_feasibility_rel);

    // Outer stagnation: successive outer solutions essentially identical.
    const double denom = norm2(prev.x);
    const double outer_change =
        denom > 0.0 ? distance2(result.x, prev.x) / denom : detail::kInf;
    if (outer_change < cfg.eps2) break;
  }

  if (capped && result.residual_rel >= cfg.eps1) {
    result.termination = Termination::kMaxIters;  // sparsity budget exhausted
  }
  result.max_feasibility_rel = max_feasibility;
  return result;
}

}  // namespace nst
