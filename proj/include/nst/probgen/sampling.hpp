#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "nst/probgen/rng.hpp"

namespace nst {

/// Uniform random size-s subset of {0..n-1} via a partial Fisher-Yates
/// shuffle, returned sorted. Consumes exactly s bounded draws, so the stream
/// position after a call is independent of which subset was selected.
inline std::vector<int> sample_support_indices(CounterRng& rng, int n, int s) {
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < s; ++i) {
    const std::uint64_t offset = rng.next_below(static_cast<std::uint64_t>(n - i));
    std::swap(pool[static_cast<std::size_t>(i)],
              pool[static_cast<std::size_t>(i) + static_cast<std::size_t>(offset)]);
  }
  pool.resize(static_cast<std::size_t>(s));
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace nst
