#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "nst/bench/experiment.hpp"
#include "nst/core/errors.hpp"
#include "nst/core/operator.hpp"
#include "nst/core/vec.hpp"
#include "nst/probgen/generate.hpp"
#include "nst/probgen/rng.hpp"
#include "nst/solvers/adaptive.hpp"
#include "nst/solvers/baselines.hpp"
#include "nst/solvers/nst.hpp"
#include "nst/solvers/result.hpp"

namespace nst {

/// Complete in-memory outcome of one experiment: the grid that was swept,
/// one record per (grid point, algorithm, trial) in that order, the derived
/// aggregate table, and (for the trace kind) the per-iteration error table.
struct ExperimentResult {
  std::vector<GridPoint> grid;
  std::vector<AlgorithmSpec> algorithms;  // after kappa expansion
  std::vector<TrialRecord> records;
  std::vector<AggregateRow> aggregate;
  std::vector<TraceRow> trace;
};

namespace detail {

inline bool supports_observer(const std::string& name) {
  return name != "omp" && name != "sp" && name != "htp";
}

inline bool is_known_algorithm(const std::string& name) {
  static const char* kNames[] = {"nst_ht", "nst_ht_fb",   "nst_ht_subfb",
                                 "nst_stretched_ht", "iht", "omp", "sp", "htp"};
  std::string base = name;
  if (base.rfind("adaptive_", 0) == 0) {
    base = base.substr(9);
    return base == "nst_ht" || base == "nst_ht_fb" || base == "nst_ht_subfb" ||
           base == "nst_stretched_ht";
  }
  for (const char* n : kNames) {
    if (base == n) return true;
  }
  return false;
}

inline NstVariant variant_from_name(const std::string& base) {
  if (base == "nst_ht") return NstVariant::kHardThreshold;
  if (base == "nst_ht_fb") return NstVariant::kHardThresholdFeedback;
  if (base == "nst_ht_subfb") return NstVariant::kHardThresholdSubFeedback;
  if (base == "nst_stretched_ht") return NstVariant::kStretchedHardThreshold;
  throw ConfigError("unknown solver variant: " + base);
}

/// Runs one algorithm on one generated problem at working sparsity s.
inline RecoveryResult solve_one(const MeasurementOperator& op, const Vector& b,
                                const AlgorithmSpec& alg, int s, bool check_feasibility,
                                const IterationObserver& observer) {
  SolverConfig cfg;
  cfg.s = s;
  cfg.eps1 = alg.eps1;
  cfg.eps2 = alg.eps2;
  cfg.max_iters = alg.max_iters;
  cfg.check_feasibility = check_feasibility;
  cfg.lambda = alg.lambda;
  cfg.lambda_spectral = alg.lambda_mode == LambdaMode::kSpectral;

  if (alg.is_adaptive()) {
    const int cap = std::min(alg.s_max.value_or(op.rows()), op.rows());
    AdaptiveConfig acfg;
    acfg.s_max = std::max(1, cap);
    acfg.s0 = std::clamp(static_cast<int>(std::llround(alg.kappa * s)), 1, acfg.s_max);
    acfg.s_step = alg.s_step;
    acfg.inner = cfg;
    acfg.variant = variant_from_name(alg.name.substr(9));
    return solve_adaptive(op, b, acfg, observer);
  }
  if (alg.name == "nst_ht") return solve_nst_ht(op, b, cfg, std::nullopt, observer);
  if (alg.name == "nst_ht_fb") return solve_nst_ht_fb(op, b, cfg, std::nullopt, observer);
  if (alg.name == "nst_ht_subfb") {
    return solve_nst_ht_subfb(op, b, cfg, std::nullopt, observer);
  }
  if (alg.name == "nst_stretched_ht") {
    return solve_nst_stretched_ht(op, b, cfg, std::nullopt, observer);
  }
  if (alg.name == "iht") return solve_iht(op, b, cfg, std::nullopt, observer);
  if (alg.name == "omp") return solve_omp(op, b, s);
  if (alg.name == "sp") return solve_sp(op, b, s, cfg);
  if (alg.name == "htp") return solve_htp(op, b, s, cfg);
  throw ConfigError("unknown algorithm identifier: " + alg.name);
}

inline std::vector<GridPoint> build_grid(const ExperimentSpec& spec) {
  std::vector<GridPoint> grid;
  if (spec.kind == ExperimentKind::kNoiseSweep) {
    for (double eps : spec.sweep.eps) grid.push_back({spec.problem.sparsity, eps});
  } else {
    for (int s : spec.sweep.s) grid.push_back({s, std::nullopt});
  }
  return grid;
}

/// The adaptive sweep compares kappa choices, so each listed algorithm is
/// cloned once per kappa value with a disambiguating name suffix; all clones
/// then share the per-(s, trial) problems.
inline std::vector<AlgorithmSpec> expand_algorithms(const ExperimentSpec& spec) {
  for (const AlgorithmSpec& alg : spec.algorithms) {
    if (!is_known_algorithm(alg.name)) {
      throw ConfigError("unknown algorithm identifier: " + alg.name);
    }
    if (spec.kind == ExperimentKind::kAdaptiveS0Sweep && !alg.is_adaptive()) {
      throw ConfigError("adaptive sweep: algorithm '" + alg.name +
                        "' is not an adaptive_* identifier");
    }
    if (spec.kind == ExperimentKind::kConvergenceTrace && !supports_observer(alg.name)) {
      throw ConfigError("convergence trace: algorithm '" + alg.name +
                        "' exposes no per-iteration state");
    }
  }
  if (spec.kind != ExperimentKind::kAdaptiveS0Sweep) return spec.algorithms;

  std::vector<AlgorithmSpec> expanded;
  for (double kappa : spec.sweep.kappa) {
    for (AlgorithmSpec alg : spec.algorithms) {
      alg.kappa = kappa;
      char suffix[48];
      std::snprintf(suffix, sizeof suffix, "@kappa=%g", kappa);
      alg.name += suffix;  // display name; dispatch strips the suffix
      expanded.push_back(std::move(alg));
    }
  }
  return expanded;
}

/// Dispatchable identifier of a (possibly kappa-suffixed) algorithm entry.
inline AlgorithmSpec dispatch_spec(const AlgorithmSpec& alg) {
  AlgorithmSpec plain = alg;
  const std::size_t at = plain.name.find("@kappa=");
  if (at != std::string::npos) plain.name.resize(at);
  return plain;
}

inline double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n == 0) return 0.0;
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace detail

/// Recomputes the aggregate table from the raw records; this is a pure
/// function of the records, so the aggregate CSV can always be rebuilt from
/// the per-trial CSV.
inline std::vector<AggregateRow> aggregate_records(const ExperimentSpec& spec,
                                                   const std::vector<GridPoint>& grid,
                                                   const std::vector<AlgorithmSpec>& algorithms,
                                                   const std::vector<TrialRecord>& records) {
  const std::size_t n_alg = algorithms.size();
  const std::size_t n_trials = static_cast<std::size_t>(spec.trials);
  std::vector<AggregateRow> rows;
  rows.reserve(grid.size() * n_alg);

  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    for (std::size_t ai = 0; ai < n_alg; ++ai) {
      const std::size_t base = (gi * n_alg + ai) * n_trials;
      AggregateRow row;
      row.algorithm = algorithms[ai].name;
      row.s = grid[gi].s;
      row.s_over_n = static_cast<double>(grid[gi].s) / spec.problem.rows;
      row.eps = grid[gi].eps;
      if (spec.kind == ExperimentKind::kAdaptiveS0Sweep) row.kappa = algorithms[ai].kappa;

      double err_sum = 0.0;
      double iter_sum = 0.0;
      int successes = 0;
      std::vector<double> times;
      times.reserve(n_trials);
      for (std::size_t t = 0; t < n_trials; ++t) {
        const TrialRecord& rec = records[base + t];
        err_sum += rec.rel_error;
        iter_sum += rec.iterations;
        successes += rec.success ? 1 : 0;
        times.push_back(rec.wall_time_s);
      }
      const double denom = static_cast<double>(n_trials);
      row.mean_rel_error = err_sum / denom;
      row.success_freq = successes / denom;
      row.mean_iters = iter_sum / denom;
      if (spec.kind == ExperimentKind::kTiming) {
        double time_sum = 0.0;
        for (double t : times) time_sum += t;
        row.mean_time_s = time_sum / denom;
        row.median_time_s = detail::median_of(std::move(times));
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

/// Runs the experiment described by an ExperimentSpec. Deterministic by construction:
/// problems are generated from seeds derived per (grid point, trial), shared
/// by every algorithm at that slot, and records land in preallocated slots
/// ordered by (grid point, algorithm, trial) regardless of scheduling.
/// Individual trial failures are recorded, never propagated. Timing
/// experiments run sequentially (concurrency would pollute the clock) after
/// one discarded warm-up solve per algorithm.
inline ExperimentResult run_experiment(const ExperimentSpec& spec, int threads = 1) {
  spec.validate();
  if (threads < 1) throw ConfigError("threads must be >= 1");

  ExperimentResult out;
  out.grid = detail::build_grid(spec);
  out.algorithms = detail::expand_algorithms(spec);

  const std::size_t n_alg = out.algorithms.size();
  const std::size_t n_trials = static_cast<std::size_t>(spec.trials);
  out.records.resize(out.grid.size() * n_alg * n_trials);

  const bool timing = spec.kind == ExperimentKind::kTiming;
  const bool tracing = spec.kind == ExperimentKind::kConvergenceTrace;
  // Per-(algorithm, trial) trace sinks for the current grid point, flattened
  // in slot order after each grid point completes.
  std::vector<std::vector<TraceRow>> trace_sinks;

  std::vector<AlgorithmSpec> dispatch;
  dispatch.reserve(n_alg);
  for (const AlgorithmSpec& alg : out.algorithms) {
    dispatch.push_back(detail::dispatch_spec(alg));
  }

  for (std::size_t gi = 0; gi < out.grid.size(); ++gi) {
    const GridPoint& point = out.grid[gi];
    const std::uint64_t grid_seed = derive_trial_seed(spec.problem.seed, gi);

    ProblemSpec base_problem = spec.problem;
    base_problem.sparsity = point.s;
    if (point.eps) base_problem.noise.eps = *point.eps;

    if (tracing) {
      trace_sinks.assign(n_alg * n_trials, {});
    }

    auto run_trial = [&](std::size_t t) {
      ProblemSpec problem = base_problem;
      problem.seed = derive_trial_seed(grid_seed, t);

      GeneratedProblem gen;
      bool generated = true;
      std::string generation_error;
      try {
        gen = generate_problem(problem);
      } catch (const std::exception& e) {
        generated = false;
        generation_error = e.what();
      }
      const double x_norm = generated ? norm2(gen.x_true) : 0.0;

      for (std::size_t ai = 0; ai < n_alg; ++ai) {
        TrialRecord rec;
        rec.algorithm = out.algorithms[ai].name;
        rec.grid_index = static_cast<int>(gi);
        rec.s = point.s;
        rec.eps = problem.noise.kind == NoiseKind::kNone ? 0.0 : problem.noise.eps;
        if (spec.kind == ExperimentKind::kAdaptiveS0Sweep) {
          rec.kappa = out.algorithms[ai].kappa;
        }
        rec.trial_index = static_cast<int>(t);
        rec.seed = problem.seed;

        if (!generated) {
          rec.rel_error = std::numeric_limits<double>::infinity();
          rec.termination = "failed";
          rec.success = false;
          out.records[(gi * n_alg + ai) * n_trials + t] = std::move(rec);
          continue;
        }

        IterationObserver observer;
        if (tracing) {
          std::vector<TraceRow>* sink = &trace_sinks[ai * n_trials + t];
          const std::string& alg_name = out.algorithms[ai].name;
          observer = [sink, &gen, x_norm, &point, t, &alg_name](const SolverState& st) {
            if (st.iter == 0) {
              sink->push_back({alg_name, point.s, static_cast<int>(t), 0,
                               distance2(st.x, gen.x_true) / x_norm});
            }
            sink->push_back({alg_name, point.s, static_cast<int>(t), st.iter + 1,
                             distance2(st.u, gen.x_true) / x_norm});
          };
        }

        const auto start = std::chrono::steady_clock::now();
        try {
          const RecoveryResult res = detail::solve_one(
              gen.op, gen.b, dispatch[ai], point.s, spec.check_feasibility, observer);
          rec.wall_time_s = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - start)
                                .count();
          rec.rel_error = distance2(res.u, gen.x_true) / x_norm;
          rec.iterations = res.iterations;
          rec.termination = to_string(res.termination);
          rec.max_feasibility_rel = res.max_feasibility_rel;
        } catch (const std::exception& e) {
          rec.wall_time_s = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - start)
                                .count();
          rec.rel_error = std::numeric_limits<double>::infinity();
          rec.iterations = 0;
          rec.termination = "failed";
          (void)e;
        }
        rec.success = rec.rel_error <= spec.success_tol;
        out.records[(gi * n_alg + ai) * n_trials + t] = std::move(rec);
      }
    };

    if (timing) {
      // One discarded warm-up solve per algorithm on an extra derived seed,
      // so first-touch effects (page faults, cold caches) stay out of trial 0.
      ProblemSpec warm = base_problem;
      warm.seed = derive_trial_seed(grid_seed, n_trials);
      try {
        const GeneratedProblem gen = generate_problem(warm);
        for (std::size_t ai = 0; ai < n_alg; ++ai) {
          try {
            (void)detail::solve_one(gen.op, gen.b, dispatch[ai], point.s,
                                    spec.check_feasibility, {});
          } catch (const std::exception&) {
          }
        }
      } catch (const std::exception&) {
      }
      for (std::size_t t = 0; t < n_trials; ++t) run_trial(t);
    } else if (threads == 1 || n_trials == 1) {
      for (std::size_t t = 0; t < n_trials; ++t) run_trial(t);
    } else {
      const std::size_t workers =
          std::min<std::size_t>(static_cast<std::size_t>(threads), n_trials);
      std::vector<std::thread> pool;
      pool.reserve(workers);
      for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t t = w; t < n_trials; t += workers) run_trial(t);
        });
      }
      for (std::thread& th : pool) th.join();
    }

    if (tracing) {
      for (std::vector<TraceRow>& sink : trace_sinks) {
        out.trace.insert(out.trace.end(), sink.begin(), sink.end());
        sink.clear();
      }
    }
  }

  out.aggregate = aggregate_records(spec, out.grid, out.algorithms, out.records);
  return out;
}

}  // namespace nst
