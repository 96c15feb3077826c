#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <iterator>
#include <utility>

namespace franson::mc::detail {

// Stable sort for sequences that are sorted up to a few local swaps, which is
// what jittered time tags look like. Linear in size plus inversions; falls
// back to std::stable_sort once the shifting work gets large.
template <typename It, typename Less>
void sort_nearly_sorted(It first, It last, Less less) {
  const auto n = static_cast<std::size_t>(std::distance(first, last));
  const std::size_t budget = 8 * n + 64;
  std::size_t moved = 0;
  for (It i = first; i != last; ++i) {
    if (i == first || !less(*i, *std::prev(i))) continue;
    auto value = std::move(*i);
    It j = i;
    do {
      *j = std::move(*std::prev(j));
      --j;
      ++moved;
    } while (j != first && less(value, *std::prev(j)));
    *j = std::move(value);
    if (moved > budget) {
      std::stable_sort(first, last, less);
      return;
    }
  }
}

template <typename It>
void sort_nearly_sorted(It first, It last) {
  sort_nearly_sorted(first, last, std::less<>{});
}

}  // namespace franson::mc::detail
