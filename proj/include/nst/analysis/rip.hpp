#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "nst/analysis/enumeration.hpp"
#include "nst/core/jacobi.hpp"
#include "nst/core/operator.hpp"
#include "nst/core/spectral.hpp"
#include "nst/probgen/rng.hpp"
#include "nst/probgen/sampling.hpp"
#include "nst/sparsity.hpp"

namespace nst {

/// How the support space is covered when estimating restricted-isometry
/// constants: every size-s support (exact, capped), or a seeded uniform
/// sample (a lower bound on the true constants).
struct RipMethod {
  enum class Kind { kExhaustive, kRandomSample };

  Kind kind = Kind::kExhaustive;
  std::uint64_t sample_count = 0;
  std::uint64_t seed = 0;

  static RipMethod exhaustive() { return {}; }
  static RipMethod random_sample(std::uint64_t count, std::uint64_t seed = 0) {
    RipMethod m;
    m.kind = Kind::kRandomSample;
    m.sample_count = count;
    m.seed = seed;
    return m;
  }
};

inline const char* to_string(RipMethod::Kind k) {
  return k == RipMethod::Kind::kExhaustive ? "exhaustive" : "random_sample";
}

/// Restricted-isometry constants of order s. delta_s bounds how far any
/// s-column Gram block sits from the identity; gamma_s is the analogous
/// constant after whitening by the row Gram (equivalently, the largest
/// eigenvalue of any s x s block of the null-space projector). Sampled
/// reports are lower bounds and say so via `method`.
struct RipReport {
  int s = 0;
  double delta_s = 0.0;
  double gamma_s = 0.0;
  std::uint64_t supports_checked = 0;
  RipMethod method;
};

namespace detail {

/// max |lambda - 1| over eigenvalues of the s x s Gram block.
inline double gram_deviation(const MeasurementOperator& op, const std::vector<int>& support) {
  const SupportSet t(support, op.cols());
  const std::vector<double> lam = eigenvalues_symmetric(gram_submatrix(op, t));
  return std::max(std::abs(lam.front() - 1.0), std::abs(lam.back() - 1.0));
}

/// Largest eigenvalue of I - A_T* (AA*)^{-1} A_T, assembled entrywise from
/// the cached pseudo-inverse rows (no matrix square root involved). The
/// block is positive semidefinite with spectrum in [0, 1]; numerical dust
/// outside that interval is clamped.
inline double whitened_deviation(const MeasurementOperator& op,
                                 const std::vector<int>& support) {
  const int s = static_cast<int>(support.size());
  DenseMatrix block(s, s);
  for (int i = 0; i < s; ++i) {
    for (int j = i; j < s; ++j) {
      const double inner = dot(op.column(support[static_cast<std::size_t>(i)]),
                               op.pinv_row(support[static_cast<std::size_t>(j)]),
                               static_cast<std::size_t>(op.rows()));
      const double value = (i == j ? 1.0 : 0.0) - inner;
      block(i, j) = value;
      block(j, i) = value;
    }
  }
  const std::vector<double> lam = eigenvalues_symmetric(block);
  return std::clamp(lam.back(), 0.0, 1.0);
}

template <typename Fn>
inline std::uint64_t visit_supports(const MeasurementOperator& op, int s,
                                    const RipMethod& method, Fn&& fn) {
  if (s < 1 || s > op.cols()) {
    throw InvalidArgumentError("rip order must lie in [1, cols]");
  }
  if (method.kind == RipMethod::Kind::kExhaustive) {
    std::uint64_t checked = 0;
    for_each_support(op.cols(), s, [&](const std::vector<int>& support) {
      fn(support);
      ++checked;
    });
    return checked;
  }
  if (method.sample_count == 0) {
    throw InvalidArgumentError("sampled rip estimation needs a positive sample count");
  }
  CounterRng rng(method.seed);
  for (std::uint64_t i = 0; i < method.sample_count; ++i) {
    fn(sample_support_indices(rng, op.cols(), s));
  }
  return method.sample_count;
}

}  // namespace detail

/// Computes both restricted-isometry constants of order s in one sweep over
/// the covered supports. Exhaustive mode is exact and throws
/// CombinatorialBlowupError past the enumeration cap; sampled mode maximizes
/// over `sample_count` uniform supports and therefore never overshoots the
/// exhaustive value.
inline RipReport rip_report(const MeasurementOperator& op, int s, const RipMethod& method) {
  RipReport report;
  report.s = s;
  report.method = method;
  report.supports_checked =
      detail::visit_supports(op, s, method, [&](const std::vector<int>& support) {
        report.delta_s = std::max(report.delta_s, detail::gram_deviation(op, support));
        report.gamma_s = std::max(report.gamma_s, detail::whitened_deviation(op, support));
      });
  return report;
}

/// delta_s alone (largest spectral deviation of any s-column Gram block).
inline double rip_constant(const MeasurementOperator& op, int s, const RipMethod& method) {
  double delta = 0.0;
  detail::visit_supports(op, s, method, [&](const std::vector<int>& support) {
    delta = std::max(delta, detail::gram_deviation(op, support));
  });
  return delta;
}

/// gamma_s alone (largest eigenvalue of any s x s null-space-projector
/// block).
inline double prip_constant(const MeasurementOperator& op, int s, const RipMethod& method) {
  double gamma = 0.0;
  detail::visit_supports(op, s, method, [&](const std::vector<int>& support) {
    gamma = std::max(gamma, detail::whitened_deviation(op, support));
  });
  return gamma;
}

/// Upper bound gamma_s <= 1 - (1 - delta_s) / lambda_max(AA*). The largest
/// eigenvalue of the row Gram is used (not the largest singular value of A),
/// which is the reading under which the bound's derivation holds for any
/// scaling of A.
inline double gamma_bound_from_delta(const MeasurementOperator& op, double delta_s) {
  const double lam_max = spectral_norm(op.row_gram()).value;
  if (lam_max <= 0.0) throw InvalidArgumentError("row Gram must be positive definite");
  return 1.0 - (1.0 - delta_s) / lam_max;
}

}  // namespace nst
