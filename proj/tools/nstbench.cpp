// nstbench: experiment runner and analysis front-end for the null-space
// tuning solver library.
//
// Subcommands:
//   phase | noise | trace | adaptive | timing   seeded experiment sweeps
//   analyze                                     restricted-isometry report
//   solve                                       one algorithm, one problem
//
// Exit codes: 0 success, 1 usage/config error, 2 analysis infeasible,
// 3 I/O failure.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nst/nst.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitIo = 3;

struct GlobalOptions {
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  int threads = 1;
};

/// Output naming: --out (or output_path) is a prefix; a trailing ".csv" is
/// stripped so `--out run.csv` and `--out run` both yield run_trials.csv,
/// run_aggregate.csv, and (trace runs) run_trace.csv.
std::string output_base(const std::string& path) {
  const std::string suffix = ".csv";
  if (path.size() > suffix.size() &&
      path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return path.substr(0, path.size() - suffix.size());
  }
  return path;
}

nst::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw nst::IoError("cannot open config: " + path);
  try {
    return nst::json::parse(in);
  } catch (const nst::json::parse_error& e) {
    throw nst::ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
}

int run_experiment_command(nst::ExperimentKind kind, const GlobalOptions& opts) {
  if (opts.config_path.empty()) {
    std::cerr << "error: --config <spec.json> is required\n";
    return kExitUsage;
  }
  nst::json j = load_json_file(opts.config_path);
  if (!j.contains("kind")) j["kind"] = nst::to_string(kind);

  nst::ExperimentSpec spec = nst::experiment_from_json(j);
  if (spec.kind != kind) {
    throw nst::ConfigError(std::string("config kind '") + nst::to_string(spec.kind) +
                           "' does not match the subcommand");
  }
  if (opts.seed) spec.problem.seed = *opts.seed;
  if (opts.trials) spec.trials = *opts.trials;
  if (!opts.out_path.empty()) spec.output_path = opts.out_path;
  if (spec.output_path.empty()) {
    std::cerr << "error: no output path (set --out or output_path in the config)\n";
    return kExitUsage;
  }

  const nst::ExperimentResult result = nst::run_experiment(spec, opts.threads);

  const std::string base = output_base(spec.output_path);
  const std::string trials_path = base + "_trials.csv";
  const std::string aggregate_path = base + "_aggregate.csv";
  nst::write_text_file(trials_path, nst::csv::render_trials(result.records));
  nst::write_text_file(aggregate_path, nst::csv::render_aggregate(result.aggregate));
  std::cout << "wrote " << trials_path << " (" << result.records.size() << " records)\n"
            << "wrote " << aggregate_path << " (" << result.aggregate.size() << " rows)\n";
  if (spec.kind == nst::ExperimentKind::kConvergenceTrace) {
    const std::string trace_path = base + "_trace.csv";
    nst::write_text_file(trace_path, nst::csv::render_trace(result.trace));
    std::cout << "wrote " << trace_path << " (" << result.trace.size() << " rows)\n";
  }
  return kExitOk;
}

int run_analyze(const std::string& matrix_path, int s, const std::string& mode,
                std::uint64_t samples, std::uint64_t sample_seed,
                const std::string& out_path) {
  const nst::DenseMatrix a = nst::io::load_matrix(matrix_path);
  const nst::MeasurementOperator op = nst::MeasurementOperator::build(a);

  nst::RipMethod method;
  if (mode == "exhaustive") {
    method = nst::RipMethod::exhaustive();
  } else if (mode == "sample") {
    method = nst::RipMethod::random_sample(samples, sample_seed);
  } else {
    throw nst::ConfigError("mode must be 'exhaustive' or 'sample'");
  }

  nst::json out;
  out["rip"] = nst::to_json(nst::rip_report(op, s, method));
  if (3 * s <= op.cols()) {
    out["certificate"] = nst::to_json(nst::certificate(op, s, method));
  } else {
    std::cerr << "note: certificate omitted (needs 3*s <= columns; s = " << s
              << ", columns = " << op.cols() << ")\n";
  }

  const std::string text = out.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    nst::write_text_file(out_path, text);
    std::cout << "wrote " << out_path << "\n";
  }
  return kExitOk;
}

int run_solve(const std::string& algorithm, const std::string& matrix_path,
              const std::string& rhs_path, int s, double eps1, double eps2, int max_iters,
              const std::string& lambda_text, double kappa, const std::string& out_path) {
  const nst::DenseMatrix a = nst::io::load_matrix(matrix_path);
  const nst::MeasurementOperator op = nst::MeasurementOperator::build(a);
  const nst::Vector b = nst::io::load_vector_text(rhs_path);

  nst::AlgorithmSpec alg;
  alg.name = algorithm;
  alg.eps1 = eps1;
  alg.eps2 = eps2;
  alg.max_iters = max_iters;
  alg.kappa = kappa;
  if (lambda_text == "spectral") {
    alg.lambda_mode = nst::LambdaMode::kSpectral;
  } else if (!lambda_text.empty()) {
    alg.lambda_mode = nst::LambdaMode::kFixed;
    alg.lambda = std::stod(lambda_text);
  }
  if (!nst::detail::is_known_algorithm(alg.name)) {
    throw nst::ConfigError("unknown algorithm identifier: " + alg.name);
  }

  const nst::RecoveryResult result = nst::detail::solve_one(op, b, alg, s, false, {});

  std::cout << "algorithm:    " << algorithm << "\n"
            << "termination:  " << nst::to_string(result.termination) << "\n"
            << "iterations:   " << result.iterations << "\n"
            << "residual_rel: " << nst::csv::format_double(result.residual_rel) << "\n";
  if (!result.failure_reason.empty()) {
    std::cout << "failure:      " << result.failure_reason << "\n";
  }
  if (!out_path.empty()) {
    nst::io::save_vector_text(out_path, result.u);
    std::cout << "wrote " << out_path << "\n";
  }
  return result.termination == nst::Termination::kFailed ? kExitUsage : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benchmark and analysis runner for null-space tuning sparse recovery"};
  app.require_subcommand(1);

  GlobalOptions opts;
  app.add_option("--config", opts.config_path, "Experiment spec (JSON)");
  app.add_option("--out", opts.out_path, "Output path / prefix (overrides config)");
  app.add_option("--seed", opts.seed, "Master seed override");
  app.add_option("--trials", opts.trials, "Trial-count override");
  app.add_option("--threads", opts.threads, "Concurrent trials per grid point")
      ->check(CLI::PositiveNumber);

  struct SubcommandKind {
    CLI::App* cmd;
    nst::ExperimentKind kind;
  };
  std::vector<SubcommandKind> experiment_cmds = {
      {app.add_subcommand("phase", "Phase-transition sweep over sparsity"),
       nst::ExperimentKind::kPhaseTransition},
      {app.add_subcommand("noise", "Noise-stability sweep over contamination level"),
       nst::ExperimentKind::kNoiseSweep},
      {app.add_subcommand("trace", "Per-iteration convergence traces"),
       nst::ExperimentKind::kConvergenceTrace},
      {app.add_subcommand("adaptive", "Initial-sparsity (kappa) sweep"),
       nst::ExperimentKind::kAdaptiveS0Sweep},
      {app.add_subcommand("timing", "Wall-clock comparison"),
       nst::ExperimentKind::kTiming},
  };
  // Let global flags (--config, --out, ...) appear after the subcommand too.
  for (const SubcommandKind& entry : experiment_cmds) entry.cmd->fallthrough();

  CLI::App* analyze = app.add_subcommand("analyze", "Restricted-isometry report for a matrix");
  analyze->fallthrough();
  std::string an_matrix;
  int an_s = 1;
  std::string an_mode = "exhaustive";
  std::uint64_t an_samples = 10000;
  std::uint64_t an_sample_seed = 0;
  analyze->add_option("--matrix", an_matrix, "Matrix file (text or binary)")->required();
  analyze->add_option("-s,--sparsity", an_s, "Support size")->required();
  analyze->add_option("--mode", an_mode, "exhaustive | sample");
  analyze->add_option("--samples", an_samples, "Support sample count (sample mode)");
  analyze->add_option("--sample-seed", an_sample_seed, "Sampling seed (sample mode)");

  CLI::App* solve = app.add_subcommand("solve", "Run one algorithm on one problem");
  solve->fallthrough();
  std::string so_alg = "nst_ht_fb";
  std::string so_matrix;
  std::string so_rhs;
  int so_s = 1;
  double so_eps1 = 1e-5;
  double so_eps2 = 1e-6;
  int so_max_iters = 1000;
  std::string so_lambda;
  double so_kappa = 0.3;
  solve->add_option("--algorithm", so_alg, "Algorithm identifier");
  solve->add_option("--matrix", so_matrix, "Matrix file (text or binary)")->required();
  solve->add_option("--rhs", so_rhs, "Measurement vector file (text)")->required();
  solve->add_option("-s,--sparsity", so_s, "Target sparsity")->required();
  solve->add_option("--eps1", so_eps1, "Relative residual tolerance");
  solve->add_option("--eps2", so_eps2, "Relative stagnation tolerance");
  solve->add_option("--max-iters", so_max_iters, "Iteration budget");
  solve->add_option("--lambda", so_lambda, "Sub-feedback weight (number or 'spectral')");
  solve->add_option("--kappa", so_kappa, "Adaptive initial-sparsity fraction");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    for (const SubcommandKind& entry : experiment_cmds) {
      if (entry.cmd->parsed()) return run_experiment_command(entry.kind, opts);
    }
    if (analyze->parsed()) {
      return run_analyze(an_matrix, an_s, an_mode, an_samples, an_sample_seed, opts.out_path);
    }
    if (solve->parsed()) {
      return run_solve(so_alg, so_matrix, so_rhs, so_s, so_eps1, so_eps2, so_max_iters,
                       so_lambda, so_kappa, opts.out_path);
    }
    std::cerr << "error: no subcommand given\n";
    return kExitUsage;
  } catch (const nst::CombinatorialBlowupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const nst::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const nst::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
