#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nst/core/errors.hpp"
#include "nst/probgen/generate.hpp"
#include "nst/solvers/result.hpp"

namespace nst {

enum class ExperimentKind {
  kPhaseTransition,
  kTiming,
  kNoiseSweep,
  kConvergenceTrace,
  kAdaptiveS0Sweep,
};

inline const char* to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::kPhaseTransition: return "phase_transition";
    case ExperimentKind::kTiming: return "timing";
    case ExperimentKind::kNoiseSweep: return "noise_sweep";
    case ExperimentKind::kConvergenceTrace: return "convergence_trace";
    case ExperimentKind::kAdaptiveS0Sweep: return "adaptive_s0_sweep";
  }
  return "unknown";
}

/// How the sub-feedback solver chooses its relaxation weight.
enum class LambdaMode { kFixed, kSpectral };

/// One algorithm entry of an experiment: a recognized identifier plus the
/// knobs that identifier understands. Unused knobs are ignored.
///
/// Identifiers: nst_ht, nst_ht_fb, nst_ht_subfb, nst_stretched_ht, iht, omp,
/// sp, htp, and adaptive_<variant> for the four NST variants.
struct AlgorithmSpec {
  std::string name;
  double eps1 = 1e-5;
  double eps2 = 1e-6;
  int max_iters = 1000;
  LambdaMode lambda_mode = LambdaMode::kFixed;
  double lambda = 1.0;
  // Adaptive-wrapper knobs: s0 = clamp(round(kappa * s), 1, s_max).
  double kappa = 0.3;
  int s_step = 1;
  std::optional<int> s_max;  // default: the row count of the operator

  bool is_adaptive() const { return name.rfind("adaptive_", 0) == 0; }
};

/// Parameter grid of an experiment; which axes are consulted depends on the
/// experiment kind (s for phase/timing/trace, eps for the noise sweep,
/// kappa x s for the adaptive sweep).
struct SweepSpec {
  std::vector<int> s;
  std::vector<double> eps;
  std::vector<double> kappa;
};

/// Full description of one benchmark run. Together with the master seed in
/// `problem`, this determines every generated instance and hence the entire
/// aggregate output byte-for-byte.
struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::kPhaseTransition;
  ProblemSpec problem;  // template: per-grid-point copies override s/eps/seed
  std::vector<AlgorithmSpec> algorithms;
  SweepSpec sweep;
  int trials = 100;
  double success_tol = 1e-4;
  std::string output_path;
  bool check_feasibility = false;  // track ||Ax - b||/||b|| inside NST runs

  void validate() const {
    if (trials < 1) throw ConfigError("experiment: trials must be >= 1");
    if (!(success_tol > 0.0)) throw ConfigError("experiment: success_tol must be > 0");
    if (algorithms.empty()) throw ConfigError("experiment: no algorithms listed");
    switch (kind) {
      case ExperimentKind::kPhaseTransition:
      case ExperimentKind::kTiming:
      case ExperimentKind::kConvergenceTrace:
        if (sweep.s.empty()) throw ConfigError("experiment: sweep.s must be nonempty");
        break;
      case ExperimentKind::kNoiseSweep:
        if (sweep.eps.empty()) throw ConfigError("experiment: sweep.eps must be nonempty");
        if (problem.noise.kind == NoiseKind::kNone) {
          throw ConfigError("noise sweep: problem.noise.kind must name a noise model");
        }
        break;
      case ExperimentKind::kAdaptiveS0Sweep:
        if (sweep.s.empty() || sweep.kappa.empty()) {
          throw ConfigError("adaptive sweep: sweep.s and sweep.kappa must be nonempty");
        }
        break;
    }
  }
};

/// One grid point of the sweep: a sparsity and, for noise sweeps, a noise
/// level. The adaptive sweep's kappa axis is folded into expanded algorithm
/// entries instead, so every kappa variant solves the same seeded problems
/// (paired comparison).
struct GridPoint {
  int s = 0;
  std::optional<double> eps;
};

/// Everything recorded about one (grid point, algorithm, trial) solve. The
/// CSV writers emit the pinned column subset; the extra fields feed
/// aggregation and in-process assertions.
struct TrialRecord {
  std::string algorithm;
  int grid_index = 0;
  int s = 0;
  double eps = 0.0;
  std::optional<double> kappa;
  int trial_index = 0;
  std::uint64_t seed = 0;
  double rel_error = 0.0;
  int iterations = 0;
  double wall_time_s = 0.0;
  std::string termination;
  bool success = false;
  double max_feasibility_rel = 0.0;
};

/// One aggregate CSV row: per (grid point, algorithm) summary statistics.
/// Time cells are engaged only for timing experiments, so that aggregate
/// files of the statistical experiment kinds are byte-identical across
/// reruns of the same spec.
struct AggregateRow {
  std::string algorithm;
  int s = 0;
  double s_over_n = 0.0;
  std::optional<double> eps;
  std::optional<double> kappa;
  double mean_rel_error = 0.0;
  double success_freq = 0.0;
  double mean_iters = 0.0;
  std::optional<double> mean_time_s;
  std::optional<double> median_time_s;
};

/// One row of the per-iteration trace table (convergence-trace kind only).
/// iteration 0 carries the error of the feasible starting point; iteration
/// k >= 1 the error after the k-th candidate update.
struct TraceRow {
  std::string algorithm;
  int s = 0;
  int trial_index = 0;
  int iteration = 0;
  double rel_error = 0.0;
};

}  // namespace nst
