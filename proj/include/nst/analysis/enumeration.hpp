#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "nst/core/errors.hpp"

namespace nst {

/// Exhaustive support enumeration refuses to walk more than this many
/// subsets; callers beyond the cap must fall back to random sampling.
inline constexpr std::uint64_t kExhaustiveSupportCap = 1'000'000;

/// Binomial coefficient C(n, k), saturating at the maximum representable
/// value instead of overflowing (callers only compare against the cap).
inline std::uint64_t combinations_count(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (c > std::numeric_limits<std::uint64_t>::max()) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return static_cast<std::uint64_t>(c);
}

/// Visits every size-k subset of {0..n-1} in lexicographic order, passing
/// each as a sorted index vector. Throws when the subset count exceeds the
/// enumeration cap.
template <typename Fn>
inline void for_each_support(int n, int k, Fn&& fn) {
  if (k < 1 || k > n) throw InvalidArgumentError("support enumeration: need 1 <= k <= n");
  if (combinations_count(n, k) > kExhaustiveSupportCap) {
    throw CombinatorialBlowupError("support enumeration exceeds the exhaustive cap");
  }
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (;;) {
    fn(static_cast<const std::vector<int>&>(idx));
    // Advance: find the rightmost index that can still move up.
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) return;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) {
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
}

}  // namespace nst
