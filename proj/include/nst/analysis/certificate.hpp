#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nst/analysis/rip.hpp"
#include "nst/core/errors.hpp"
#include "nst/core/operator.hpp"
#include "nst/core/vec.hpp"

namespace nst {

/// Worst-case convergence certificate assembled from the restricted-isometry
/// constants of orders s, 2s, and 3s. rho_* are per-iteration contraction
/// factors for the hard-threshold and feedback iterations, tau_fb the noise
/// amplification factor of the feedback bound; each is meaningful only when
/// the matching condition flag holds.
struct ConvergenceCertificate {
  int s = 0;
  double delta_s = 0.0;
  double delta_2s = 0.0;
  double gamma_3s = 0.0;
  double rho_ht = 0.0;
  double rho_fb = 0.0;
  double tau_fb = 0.0;
  bool ht_condition_met = false;
  bool fb_condition_met = false;
};

/// Builds the certificate by estimating delta_s, delta_2s, and gamma_3s with
/// the given coverage method. Requires 3s <= columns so the order-3s
/// constant exists. A sampled method yields optimistic (lower-bound)
/// constants, hence an optimistic certificate; exhaustive mode is exact.
inline ConvergenceCertificate certificate(const MeasurementOperator& op, int s,
                                          const RipMethod& method) {
  if (s < 1) throw InvalidArgumentError("certificate: s must be positive");
  if (3 * s > op.cols()) {
    throw InvalidArgumentError("certificate: 3s must not exceed the column count");
  }

  ConvergenceCertificate cert;
  cert.s = s;
  cert.delta_s = rip_constant(op, s, method);
  cert.delta_2s = rip_constant(op, 2 * s, method);
  cert.gamma_3s = prip_constant(op, 3 * s, method);

  cert.rho_ht = 2.0 * cert.gamma_3s;
  const double denom = 1.0 - cert.delta_2s;
  if (denom > 0.0) {
    cert.rho_fb = std::numbers::sqrt2 * cert.gamma_3s / denom;
    cert.tau_fb = (std::numbers::sqrt2 + std::sqrt(1.0 + cert.delta_s)) / denom;
  } else {
    cert.rho_fb = std::numeric_limits<double>::infinity();
    cert.tau_fb = std::numeric_limits<double>::infinity();
  }
  cert.ht_condition_met = cert.gamma_3s < 0.5;
  cert.fb_condition_met = cert.delta_2s + std::numbers::sqrt2 * cert.gamma_3s < 1.0;
  return cert;
}

namespace detail {

inline double geometric_bound(double rho, double coeff, double u0_err, double e_tilde_norm,
                              int k, const char* which) {
  if (k < 0) throw InvalidArgumentError("error bound: iteration index must be >= 0");
  if (!(u0_err >= 0.0) || !(e_tilde_norm >= 0.0)) {
    throw InvalidArgumentError("error bound: norms must be non-negative");
  }
  if (!(rho < 1.0)) {
    throw ConditionNotMetError(std::string(which) +
                               " contraction factor is not below 1; the bound is vacuous");
  }
  return std::pow(rho, k) * u0_err + coeff / (1.0 - rho) * e_tilde_norm;
}

}  // namespace detail

/// Worst-case error after k hard-threshold iterations:
/// rho_ht^k * u0_err + 2 / (1 - rho_ht) * ||e_tilde||, where e_tilde is the
/// whitened residual-side perturbation (see whitened_residual_norm).
inline double error_bound_ht(const ConvergenceCertificate& cert, double u0_err,
                             double e_tilde_norm, int k) {
  return detail::geometric_bound(cert.rho_ht, 2.0, u0_err, e_tilde_norm, k,
                                 "hard-threshold");
}

/// Worst-case error after k feedback iterations:
/// rho_fb^k * u0_err + tau_fb / (1 - rho_fb) * ||e_tilde||, with e_tilde the
/// plain (unwhitened) residual-side perturbation.
inline double error_bound_fb(const ConvergenceCertificate& cert, double u0_err,
                             double e_tilde_norm, int k) {
  return detail::geometric_bound(cert.rho_fb, cert.tau_fb, u0_err, e_tilde_norm, k,
                                 "feedback");
}

/// Norm of v under the inverse row Gram: sqrt(v^T (AA*)^{-1} v). This is the
/// length of (AA*)^{-1/2} v without forming any matrix square root — the
/// noise norm the hard-threshold bound is stated in. For the feedback bound
/// use the plain Euclidean norm instead; the two definitions are reported
/// separately on purpose.
inline double whitened_residual_norm(const MeasurementOperator& op, const Vector& v) {
  if (static_cast<int>(v.size()) != op.rows()) {
    throw DimensionMismatchError("whitened norm: vector length must equal rows");
  }
  const Vector solved = op.solve_row_gram(v);
  const double sq = dot(v, solved);
  return std::sqrt(sq > 0.0 ? sq : 0.0);
}

}  // namespace nst
