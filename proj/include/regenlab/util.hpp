#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "regenlab/rng.hpp"

namespace regenlab {

// Calls fn for every k-subset of {0..n-1} in lexicographic order until fn
// returns false. The span is only valid during the call.
inline void for_each_combination(int n, int k,
                                 const std::function<bool(std::span<const int>)>& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(std::span<const int>(idx.data(), idx.size()))) return;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// k distinct values from `pool`, order-stable draw by index.
inline std::vector<int> sample_distinct(std::span<const int> pool, int k, Rng& rng) {
  std::vector<int> bag(pool.begin(), pool.end());
  std::vector<int> out;
  out.reserve(k);
  for (int i = 0; i < k; ++i) {
    const std::size_t j = std::size_t(rng.below(bag.size()));
    out.push_back(bag[j]);
    bag.erase(bag.begin() + j);
  }
  return out;
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * std::uint64_t(n - k + i) / i;
  return r;
}

}  // namespace regenlab
