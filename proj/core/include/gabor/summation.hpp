#pragma once

#include <cstddef>
#include <utility>

namespace gabor {

/// Cascade summation of term(0) + ... + term(n-1).
///
/// Leaves of up to 128 terms are summed left to right; larger ranges are split
/// in half and combined. The rounding error grows like O(log n) instead of O(n),
/// and the order of operations depends only on n, so results are reproducible.
template <typename T, typename Term>
T pairwise_sum(std::size_t begin, std::size_t end, Term&& term) {
  constexpr std::size_t kLeaf = 128;
  const std::size_t n = end - begin;
  if (n <= kLeaf) {
    T acc{};
    for (std::size_t i = begin; i < end; ++i) acc += term(i);
    return acc;
  }
  const std::size_t mid = begin + n / 2;
  return pairwise_sum<T>(begin, mid, term) + pairwise_sum<T>(mid, end, term);
}

template <typename T, typename Term>
T pairwise_sum(std::size_t n, Term&& term) {
  return pairwise_sum<T>(std::size_t{0}, n, std::forward<Term>(term));
}

}  // namespace gabor
