#pragma once

#include <span>
#include <vector>

namespace tightcycle {

/// Calls fn(span of r ascending indices in [0, n)) for every r-subset, in
/// lexicographic order.  r == 0 yields one empty combination.
template <typename Fn>
void for_each_combination(int n, int r, Fn&& fn) {
  if (r < 0 || r > n) return;
  std::vector<int> idx(r);
  for (int i = 0; i < r; ++i) idx[i] = i;
  while (true) {
    fn(std::span<const int>(idx));
    int pos = r - 1;
    while (pos >= 0 && idx[pos] == n - r + pos) --pos;
    if (pos < 0) return;
    ++idx[pos];
    for (int i = pos + 1; i < r; ++i) idx[i] = idx[i - 1] + 1;
  }
}

}  // namespace tightcycle
