#pragma once

#include <cmath>
#include <cstdint>

#include "nst/core/matrix.hpp"
#include "nst/core/vec.hpp"

namespace nst {

struct SpectralNormResult {
  double value = 0.0;    ///< best estimate of the largest singular value
  bool converged = false;
  int iterations = 0;
};

namespace detail {
/// 64-bit avalanche mix (splitmix finalizer); used for deterministic seeding.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Largest singular value of m by power iteration on m'm (never formed; each
/// step applies m and m'). The start vector is a fixed pseudo-random pattern,
/// so results are deterministic. Convergence is declared when the Rayleigh
/// quotient's relative change drops below tol. When max_iters is exhausted
/// first, the best estimate is returned with converged = false.
inline SpectralNormResult spectral_norm(const DenseMatrix& m, double tol = 1e-6,
                                        int max_iters = 500) {
  SpectralNormResult result;
  const int rows = m.rows();
  const int cols = m.cols();
  if (rows == 0 || cols == 0) {
    result.converged = true;
    return result;
  }

  Vector v(static_cast<std::size_t>(cols));
  for (int i = 0; i < cols; ++i) {
    // Deterministic start in (0, 1], bounded away from any fixed subspace.
    v[static_cast<std::size_t>(i)] =
        0.5 + static_cast<double>(detail::mix64(static_cast<std::uint64_t>(i)) >> 11) * 0x1.0p-54;
  }
  double nrm = norm2(v);
  for (double& x : v) x /= nrm;

  Vector w(static_cast<std::size_t>(rows));
  Vector z(static_cast<std::size_t>(cols));
  double lambda_prev = 0.0;
  for (int it = 1; it <= max_iters; ++it) {
    result.iterations = it;
    for (int r = 0; r < rows; ++r) {
      w[static_cast<std::size_t>(r)] = dot(m.row(r), v.data(), v.size());
    }
    const double lambda = norm2_squared(w);  // v is unit, so this is v' m'm v
    std::fill(z.begin(), z.end(), 0.0);
    for (int r = 0; r < rows; ++r) {
      const double wr = w[static_cast<std::size_t>(r)];
      if (wr == 0.0) continue;
      const double* mrow = m.row(r);
      for (int c = 0; c < cols; ++c) z[static_cast<std::size_t>(c)] += wr * mrow[c];
    }
    result.value = std::sqrt(std::max(lambda, 0.0));
    if (std::abs(lambda - lambda_prev) <= tol * std::max(lambda, 1e-300)) {
      result.converged = true;
      return result;
    }
    lambda_prev = lambda;
    const double znrm = norm2(z);
    if (znrm == 0.0) {  // v is in the null space: the norm estimate is 0
      result.value = 0.0;
      result.converged = true;
      return result;
    }
    for (std::size_t i = 0; i < z.size(); ++i) v[i] = z[i] / znrm;
  }
  return result;  // best estimate, flagged unconverged
}

}  // namespace nst
