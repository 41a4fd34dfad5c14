#pragma once

#include <cassert>
#include <utility>
#include <vector>

namespace vortex {

/// Lexicographic enumeration of the pairs i < j of {0, ..., n-1}.
/// Pair-valued quantities (relative rates, mu_ij, f_ij) are stored as flat
/// vectors in this order.
inline int pair_count(int n) { return n * (n - 1) / 2; }

inline int pair_index(int i, int j, int n) {
  assert(0 <= i && i < j && j < n);
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

inline std::vector<std::pair<int, int>> pair_list(int n) {
  std::vector<std::pair<int, int>> out;
  out.reserve(pair_count(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

}  // namespace vortex
