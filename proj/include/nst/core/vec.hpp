#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "nst/core/errors.hpp"

namespace nst {

/// Dense real vector. All public entry points validate finiteness on input;
/// internal kernels assume it.
using Vector = std::vector<double>;

inline void ensure_finite(const Vector& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw InvalidArgumentError(std::string(what) + " contains a non-finite entry");
    }
  }
}

inline void ensure_same_size(const Vector& a, const Vector& b, const char* what) {
  if (a.size() != b.size()) {
    throw DimensionMismatchError(std::string(what) + ": vector lengths " +
                                 std::to_string(a.size()) + " and " +
                                 std::to_string(b.size()) + " differ");
  }
}

inline double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

inline double dot(const Vector& a, const Vector& b) {
  ensure_same_size(a, b, "dot");
  return dot(a.data(), b.data(), a.size());
}

inline double norm2_squared(const Vector& v) { return dot(v.data(), v.data(), v.size()); }

inline double norm2(const Vector& v) { return std::sqrt(norm2_squared(v)); }

inline double norm1(const Vector& v) {
  double acc = 0.0;
  for (double x : v) acc += std::abs(x);
  return acc;
}

inline double norm_inf(const Vector& v) {
  double acc = 0.0;
  for (double x : v) acc = std::max(acc, std::abs(x));
  return acc;
}

/// y += alpha * x
inline void axpy(double alpha, const Vector& x, Vector& y) {
  ensure_same_size(x, y, "axpy");
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline Vector subtract(const Vector& a, const Vector& b) {
  ensure_same_size(a, b, "subtract");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Vector add(const Vector& a, const Vector& b) {
  ensure_same_size(a, b, "add");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline void scale_in_place(Vector& v, double alpha) {
  for (double& x : v) x *= alpha;
}

inline Vector scaled(const Vector& v, double alpha) {
  Vector out(v);
  scale_in_place(out, alpha);
  return out;
}

inline double distance2(const Vector& a, const Vector& b) {
  ensure_same_size(a, b, "distance2");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace nst
