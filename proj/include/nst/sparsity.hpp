#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "nst/core/errors.hpp"
#include "nst/core/vec.hpp"

namespace nst {

/// An index set over an ambient dimension: sorted ascending, no duplicates.
class SupportSet {
 public:
  SupportSet() = default;

  SupportSet(std::vector<int> indices, int ambient_dim)
      : indices_(std::move(indices)), ambient_(ambient_dim) {
    std::sort(indices_.begin(), indices_.end());
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      if (indices_[i] < 0 || indices_[i] >= ambient_) {
        throw InvalidArgumentError("support index " + std::to_string(indices_[i]) +
                                   " outside ambient dimension " + std::to_string(ambient_));
      }
      if (i > 0 && indices_[i] == indices_[i - 1]) {
        throw InvalidArgumentError("duplicate support index " + std::to_string(indices_[i]));
      }
    }
  }

  int size() const { return static_cast<int>(indices_.size()); }
  int ambient_dim() const { return ambient_; }
  const std::vector<int>& indices() const { return indices_; }
  int operator[](int i) const { return indices_[static_cast<std::size_t>(i)]; }

  bool operator==(const SupportSet& other) const {
    return ambient_ == other.ambient_ && indices_ == other.indices_;
  }

  bool contains(int idx) const {
    return std::binary_search(indices_.begin(), indices_.end(), idx);
  }

  /// The complementary index set in the same ambient dimension.
  SupportSet complement() const {
    std::vector<int> comp;
    comp.reserve(static_cast<std::size_t>(ambient_ - size()));
    std::size_t pos = 0;
    for (int i = 0; i < ambient_; ++i) {
      if (pos < indices_.size() && indices_[pos] == i) {
        ++pos;
      } else {
        comp.push_back(i);
      }
    }
    SupportSet out;
    out.indices_ = std::move(comp);
    out.ambient_ = ambient_;
    return out;
  }

 private:
  std::vector<int> indices_;
  int ambient_ = 0;
};

/// Indices of the s largest-magnitude entries of x. Ties are broken toward
/// the smaller index, so the result is a deterministic function of x — it
/// matches what a full stable sort by (|x_i| descending, i ascending) would
/// select, at partial-selection cost.
inline SupportSet select_support(const Vector& x, int s) {
  const int n = static_cast<int>(x.size());
  if (s < 0 || s > n) {
    throw InvalidArgumentError("select_support: s = " + std::to_string(s) +
                               " outside [0, " + std::to_string(n) + "]");
  }
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  const auto prefer = [&x](int a, int b) {
    const double ma = std::abs(x[static_cast<std::size_t>(a)]);
    const double mb = std::abs(x[static_cast<std::size_t>(b)]);
    if (ma != mb) return ma > mb;
    return a < b;
  };
  if (s < n) {
    std::nth_element(idx.begin(), idx.begin() + s, idx.end(), prefer);
  }
  idx.resize(static_cast<std::size_t>(s));
  return SupportSet(std::move(idx), n);
}

/// Keeps the entries of x on the given support, zeroing everything else.
inline Vector restrict_to_support(const Vector& x, const SupportSet& support) {
  if (static_cast<int>(x.size()) != support.ambient_dim()) {
    throw DimensionMismatchError("restrict_to_support: ambient dimension mismatch");
  }
  Vector out(x.size(), 0.0);
  for (int i : support.indices()) {
    out[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
  }
  return out;
}

/// The best s-term approximation of x: entries on the s largest-magnitude
/// positions are kept (even when zero), the rest are zeroed.
inline Vector hard_threshold(const Vector& x, int s) {
  return restrict_to_support(x, select_support(x, s));
}

/// Compacts the entries of x on the support into a dense length-|support|
/// vector (ordered by ascending index).
inline Vector gather(const Vector& x, const SupportSet& support) {
  if (static_cast<int>(x.size()) != support.ambient_dim()) {
    throw DimensionMismatchError("gather: ambient dimension mismatch");
  }
  Vector out;
  out.reserve(static_cast<std::size_t>(support.size()));
  for (int i : support.indices()) out.push_back(x[static_cast<std::size_t>(i)]);
  return out;
}

/// Expands a compact coefficient vector onto the support inside a zero vector
/// of the ambient dimension. Inverse of gather on the support.
inline Vector scatter(const Vector& coeffs, const SupportSet& support) {
  if (static_cast<int>(coeffs.size()) != support.size()) {
    throw DimensionMismatchError("scatter: coefficient count " + std::to_string(coeffs.size()) +
                                 " vs support size " + std::to_string(support.size()));
  }
  Vector out(static_cast<std::size_t>(support.ambient_dim()), 0.0);
  for (int i = 0; i < support.size(); ++i) {
    out[static_cast<std::size_t>(support[i])] = coeffs[static_cast<std::size_t>(i)];
  }
  return out;
}

}  // namespace nst
