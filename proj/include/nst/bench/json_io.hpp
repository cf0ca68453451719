#pragma once

#include <string>

#include <json.hpp>

#include "nst/analysis/certificate.hpp"
#include "nst/analysis/rip.hpp"
#include "nst/bench/experiment.hpp"
#include "nst/core/errors.hpp"
#include "nst/probgen/generate.hpp"

namespace nst {

using nlohmann::json;

namespace detail {

inline SignalEnsemble ensemble_from_string(const std::string& s) {
  if (s == "gaussian") return SignalEnsemble::kGaussian;
  if (s == "bernoulli") return SignalEnsemble::kBernoulli;
  throw ConfigError("unknown ensemble: " + s);
}

inline NoiseKind noise_kind_from_string(const std::string& s) {
  if (s == "none") return NoiseKind::kNone;
  if (s == "signal_contaminated") return NoiseKind::kSignalContaminated;
  if (s == "measurement_contaminated") return NoiseKind::kMeasurementContaminated;
  throw ConfigError("unknown noise kind: " + s);
}

inline ExperimentKind experiment_kind_from_string(const std::string& s) {
  if (s == "phase_transition") return ExperimentKind::kPhaseTransition;
  if (s == "timing") return ExperimentKind::kTiming;
  if (s == "noise_sweep") return ExperimentKind::kNoiseSweep;
  if (s == "convergence_trace") return ExperimentKind::kConvergenceTrace;
  if (s == "adaptive_s0_sweep") return ExperimentKind::kAdaptiveS0Sweep;
  throw ConfigError("unknown experiment kind: " + s);
}

}  // namespace detail

inline json to_json(const ProblemSpec& spec) {
  return json{{"n", spec.rows},
              {"N", spec.cols},
              {"s", spec.sparsity},
              {"ensemble", to_string(spec.ensemble)},
              {"noise", json{{"kind", to_string(spec.noise.kind)}, {"eps", spec.noise.eps}}},
              {"seed", spec.seed}};
}

inline ProblemSpec problem_from_json(const json& j) {
  ProblemSpec spec;
  spec.rows = j.at("n").get<int>();
  spec.cols = j.at("N").get<int>();
  spec.sparsity = j.at("s").get<int>();
  if (j.contains("ensemble")) {
    spec.ensemble = detail::ensemble_from_string(j.at("ensemble").get<std::string>());
  }
  if (j.contains("noise")) {
    const json& noise = j.at("noise");
    spec.noise.kind = detail::noise_kind_from_string(noise.at("kind").get<std::string>());
    spec.noise.eps = noise.value("eps", 0.0);
  }
  spec.seed = j.value("seed", std::uint64_t{0});
  return spec;
}

inline json to_json(const AlgorithmSpec& alg) {
  json j{{"name", alg.name},
         {"eps1", alg.eps1},
         {"eps2", alg.eps2},
         {"max_iters", alg.max_iters},
         {"kappa", alg.kappa},
         {"s_step", alg.s_step}};
  j["lambda"] = alg.lambda_mode == LambdaMode::kSpectral ? json("spectral") : json(alg.lambda);
  if (alg.s_max) j["s_max"] = *alg.s_max;
  return j;
}

inline AlgorithmSpec algorithm_from_json(const json& j) {
  AlgorithmSpec alg;
  if (j.is_string()) {  // shorthand: "iht" means defaults
    alg.name = j.get<std::string>();
    return alg;
  }
  alg.name = j.at("name").get<std::string>();
  alg.eps1 = j.value("eps1", alg.eps1);
  alg.eps2 = j.value("eps2", alg.eps2);
  alg.max_iters = j.value("max_iters", alg.max_iters);
  alg.kappa = j.value("kappa", alg.kappa);
  alg.s_step = j.value("s_step", alg.s_step);
  if (j.contains("s_max")) alg.s_max = j.at("s_max").get<int>();
  if (j.contains("lambda")) {
    const json& lam = j.at("lambda");
    if (lam.is_string()) {
      if (lam.get<std::string>() != "spectral") {
        throw ConfigError("lambda must be a number or \"spectral\"");
      }
      alg.lambda_mode = LambdaMode::kSpectral;
    } else {
      alg.lambda_mode = LambdaMode::kFixed;
      alg.lambda = lam.get<double>();
    }
  }
  return alg;
}

inline json to_json(const ExperimentSpec& spec) {
  json algs = json::array();
  for (const AlgorithmSpec& alg : spec.algorithms) algs.push_back(to_json(alg));
  json sweep;
  if (!spec.sweep.s.empty()) sweep["s"] = spec.sweep.s;
  if (!spec.sweep.eps.empty()) sweep["eps"] = spec.sweep.eps;
  if (!spec.sweep.kappa.empty()) sweep["kappa"] = spec.sweep.kappa;
  return json{{"kind", to_string(spec.kind)},
              {"problem", to_json(spec.problem)},
              {"algorithms", algs},
              {"sweep", sweep},
              {"trials", spec.trials},
              {"success_tol", spec.success_tol},
              {"output_path", spec.output_path},
              {"check_feasibility", spec.check_feasibility}};
}

inline ExperimentSpec experiment_from_json(const json& j) {
  ExperimentSpec spec;
  spec.kind = detail::experiment_kind_from_string(j.at("kind").get<std::string>());
  spec.problem = problem_from_json(j.at("problem"));
  for (const json& alg : j.at("algorithms")) {
    spec.algorithms.push_back(algorithm_from_json(alg));
  }
  if (j.contains("sweep")) {
    const json& sweep = j.at("sweep");
    if (sweep.contains("s")) spec.sweep.s = sweep.at("s").get<std::vector<int>>();
    if (sweep.contains("eps")) {
      spec.sweep.eps = sweep.at("eps").get<std::vector<double>>();
    }
    if (sweep.contains("kappa")) {
      spec.sweep.kappa = sweep.at("kappa").get<std::vector<double>>();
    }
  }
  spec.trials = j.value("trials", spec.trials);
  spec.success_tol = j.value("success_tol", spec.success_tol);
  spec.output_path = j.value("output_path", std::string());
  spec.check_feasibility = j.value("check_feasibility", false);
  return spec;
}

inline json to_json(const RipReport& report) {
  json method{{"kind", to_string(report.method.kind)}};
  if (report.method.kind == RipMethod::Kind::kRandomSample) {
    method["sample_count"] = report.method.sample_count;
    method["seed"] = report.method.seed;
  }
  return json{{"s", report.s},
              {"delta_s", report.delta_s},
              {"gamma_s", report.gamma_s},
              {"supports_checked", report.supports_checked},
              {"method", method}};
}

inline json to_json(const ConvergenceCertificate& cert) {
  return json{{"s", cert.s},
              {"delta_s", cert.delta_s},
              {"delta_2s", cert.delta_2s},
              {"gamma_3s", cert.gamma_3s},
              {"rho_ht", cert.rho_ht},
              {"rho_fb", cert.rho_fb},
              {"tau_fb", cert.tau_fb},
              {"ht_condition_met", cert.ht_condition_met},
              {"fb_condition_met", cert.fb_condition_met}};
}

}  // namespace nst
