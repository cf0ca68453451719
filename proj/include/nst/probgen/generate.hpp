#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "nst/core/errors.hpp"
#include "nst/core/matrix.hpp"
#include "nst/core/operator.hpp"
#include "nst/core/vec.hpp"
#include "nst/probgen/rng.hpp"
#include "nst/probgen/sampling.hpp"
#include "nst/sparsity.hpp"

namespace nst {

enum class SignalEnsemble { kGaussian, kBernoulli };

enum class NoiseKind { kNone, kSignalContaminated, kMeasurementContaminated };

inline const char* to_string(SignalEnsemble e) {
  return e == SignalEnsemble::kGaussian ? "gaussian" : "bernoulli";
}

inline const char* to_string(NoiseKind k) {
  switch (k) {
    case NoiseKind::kNone: return "none";
    case NoiseKind::kSignalContaminated: return "signal_contaminated";
    case NoiseKind::kMeasurementContaminated: return "measurement_contaminated";
  }
  return "unknown";
}

struct NoiseSpec {
  NoiseKind kind = NoiseKind::kNone;
  double eps = 0.0;
};

/// Full description of one synthetic recovery instance. Everything that the
/// generated problem contains is a deterministic function of these fields.
struct ProblemSpec {
  int rows = 0;           // measurements n
  int cols = 0;           // ambient dimension N
  int sparsity = 0;       // exact support size of the planted signal
  SignalEnsemble ensemble = SignalEnsemble::kGaussian;
  NoiseSpec noise;
  std::uint64_t seed = 0;

  void validate() const {
    if (rows < 1) throw InvalidArgumentError("problem spec: rows must be positive");
    if (cols <= rows) throw InvalidArgumentError("problem spec: cols must exceed rows");
    if (sparsity < 1 || sparsity > rows) {
      throw InvalidArgumentError("problem spec: sparsity must lie in [1, rows]");
    }
    if (!(noise.eps >= 0.0)) throw InvalidArgumentError("problem spec: eps must be >= 0");
  }
};

struct GeneratedProblem {
  MeasurementOperator op;
  Vector x_true;   // planted signal, exactly s-sparse
  Vector noise_v;  // contamination vector; empty when the noise model is None
  Vector b;        // observed measurements
  SupportSet support;
};

namespace detail {

inline Vector draw_gaussian_vector(CounterRng& rng, std::size_t len) {
  Vector v(len);
  for (double& entry : v) entry = rng.next_gaussian();
  return v;
}

/// Rescales v to Euclidean length `target` exactly; a numerically zero draw
/// cannot be rescaled and is reported, not silently resampled.
inline void rescale_to_norm(Vector& v, double target, const char* what) {
  const double norm = norm2(v);
  if (norm < 1e-14) throw InvalidArgumentError(std::string("degenerate draw: ") + what);
  const double factor = target / norm;
  for (double& entry : v) entry *= factor;
}

}  // namespace detail

/// Deterministically generates a recovery instance from a ProblemSpec. The draw
/// order is frozen (matrix entries row-major, then support, then signal
/// values on the sorted support, then the noise vector) so outputs are
/// bit-identical per seed across platforms and versions. Degenerate draws
/// (zero matrix column, rank-deficient row Gram) surface as errors; trials
/// are never silently resampled.
inline GeneratedProblem generate_problem(const ProblemSpec& spec) {
  spec.validate();
  CounterRng rng(spec.seed);

  const std::size_t n = static_cast<std::size_t>(spec.rows);
  const std::size_t big_n = static_cast<std::size_t>(spec.cols);

  // Measurement matrix: i.i.d. standard normal entries, columns normalized
  // to unit length before anything else is drawn.
  std::vector<double> entries(n * big_n);
  for (double& e : entries) e = rng.next_gaussian();
  DenseMatrix a = DenseMatrix::from_data(spec.rows, spec.cols, std::move(entries));
  for (int j = 0; j < spec.cols; ++j) {
    double sq = 0.0;
    for (int i = 0; i < spec.rows; ++i) sq += a(i, j) * a(i, j);
    const double norm = std::sqrt(sq);
    if (norm < 1e-12) throw RankDeficientError("generated matrix has a zero column");
    for (int i = 0; i < spec.rows; ++i) a(i, j) /= norm;
  }

  GeneratedProblem out;
  out.support =
      SupportSet(sample_support_indices(rng, spec.cols, spec.sparsity), spec.cols);

  out.x_true.assign(big_n, 0.0);
  for (int idx : out.support.indices()) {
    double value = 0.0;
    if (spec.ensemble == SignalEnsemble::kGaussian) {
      value = rng.next_gaussian();
    } else {
      value = (rng.next_u64() & 1ULL) ? 1.0 : -1.0;
    }
    out.x_true[static_cast<std::size_t>(idx)] = value;
  }

  out.op = MeasurementOperator::build(std::move(a));

  switch (spec.noise.kind) {
    case NoiseKind::kNone: {
      out.b = out.op.apply_on_support(out.x_true, out.support);
      break;
    }
    case NoiseKind::kSignalContaminated: {
      detail::rescale_to_norm(out.x_true, 1.0, "signal");
      out.noise_v = detail::draw_gaussian_vector(rng, big_n);
      detail::rescale_to_norm(out.noise_v, 1.0, "noise");
      for (double& e : out.noise_v) e *= spec.noise.eps;  // exact ||v|| = eps
      Vector contaminated = out.x_true;
      for (std::size_t i = 0; i < big_n; ++i) contaminated[i] += out.noise_v[i];
      out.b = out.op.apply(contaminated);
      break;
    }
    case NoiseKind::kMeasurementContaminated: {
      Vector ax = out.op.apply_on_support(out.x_true, out.support);
      const double norm_ax = norm2(ax);
      if (norm_ax < 1e-14) throw InvalidArgumentError("degenerate draw: measurements");
      for (double& e : out.x_true) e /= norm_ax;  // makes ||A x_true|| = 1
      for (double& e : ax) e /= norm_ax;
      out.noise_v = detail::draw_gaussian_vector(rng, n);
      detail::rescale_to_norm(out.noise_v, 1.0, "noise");
      for (double& e : out.noise_v) e *= spec.noise.eps;
      out.b = add(ax, out.noise_v);
      break;
    }
  }

  return out;
}

}  // namespace nst
