#pragma once

#include <functional>
#include <string>
#include <vector>

#include "nst/core/errors.hpp"
#include "nst/core/vec.hpp"
#include "nst/sparsity.hpp"

namespace nst {

/// Why a solver stopped.
enum class Termination {
  kResidualMet,   ///< relative residual dropped below eps1
  kStagnated,     ///< relative change between approximations dropped below eps2
  kSupportFixed,  ///< the selected support repeated, freezing the iteration
  kMaxIters,      ///< the iteration budget ran out
  kFailed,        ///< the run aborted (reason recorded); result is best effort
};

inline const char* to_string(Termination t) {
  switch (t) {
    case Termination::kResidualMet: return "residual_met";
    case Termination::kStagnated: return "stagnated";
    case Termination::kSupportFixed: return "support_fixed";
    case Termination::kMaxIters: return "max_iters";
    case Termination::kFailed: return "failed";
  }
  return "unknown";
}

/// Solver knobs. A solver keeps iterating while the relative residual is at
/// least eps1 AND the relative change between successive approximations is at
/// least eps2, so it stops on whichever tolerance is crossed first. The
/// change test is skipped on the first iteration (no previous approximation;
/// an exactly zero previous approximation likewise yields an infinite
/// relative change and keeps the loop running).
struct SolverConfig {
  int s = 1;           ///< target sparsity
  double eps1 = 1e-5;  ///< relative residual tolerance
  double eps2 = 1e-6;  ///< relative stagnation tolerance
  int max_iters = 1000;

  /// Record a (iter, residual_rel, change_rel, support) row per iteration.
  bool trace = false;

  /// Track max ||A x^k - b|| / ||b|| across the run (null-space-tuning
  /// family only; their iterates are feasible by construction and this
  /// verifies it).
  bool check_feasibility = false;

  /// Scaled-feedback solver only. Fixed mode multiplies the feedback term by
  /// `lambda`; spectral mode recomputes the largest admissible scale
  /// 1 / ||A_T* A_T||_2 each iteration instead.
  double lambda = 1.0;
  bool lambda_spectral = false;

  SolverConfig with_sparsity(int sparsity) const {
    SolverConfig out = *this;
    out.s = sparsity;
    return out;
  }

  void validate() const {
    if (s < 1) throw InvalidArgumentError("sparsity s must be at least 1");
    if (!(eps1 > 0.0)) throw InvalidArgumentError("eps1 must be positive");
    if (!(eps2 > 0.0)) throw InvalidArgumentError("eps2 must be positive");
    if (max_iters < 1) throw InvalidArgumentError("max_iters must be at least 1");
    if (!(lambda > 0.0)) throw InvalidArgumentError("lambda must be positive");
  }
};

struct TraceEntry {
  int iter = 0;
  double residual_rel = 0.0;
  double change_rel = 0.0;
  SupportSet support;
};

/// Snapshot handed to an IterationObserver after each approximation is
/// computed (before the stopping tests of that iteration are applied). The
/// references are only valid during the callback; u_prev is empty on the
/// first iteration.
struct SolverState {
  int iter;                  ///< 0-based approximation index
  const Vector& x;           ///< iterate the approximation was computed from
  const Vector& u;           ///< current sparse approximation
  const Vector& u_prev;      ///< previous approximation (empty when iter = 0)
  const SupportSet& support;
  double residual_rel;
  double change_rel;
};

/// Optional per-iteration hook; used by the benchmark layer to compute
/// per-iteration error traces against a known ground truth, which the stored
/// TraceEntry rows (no iterate payload) cannot provide.
using IterationObserver = std::function<void(const SolverState&)>;

struct RecoveryResult {
  Vector u;  ///< final sparse approximation
  Vector x;  ///< iterate the final approximation was computed from
  int iterations = 0;  ///< number of approximations computed
  double residual_rel = 0.0;
  Termination termination = Termination::kFailed;
  std::string failure_reason;        ///< set when termination == kFailed
  std::vector<TraceEntry> trace;     ///< filled when SolverConfig::trace
  double max_feasibility_rel = 0.0;  ///< filled when SolverConfig::check_feasibility
};

}  // namespace nst
