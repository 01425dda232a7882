#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "gabor/grid.hpp"

namespace gabor::detail {

/// exp(2 pi i r / K) for r in [0, K).
inline std::vector<cplx> roots_of_unity(std::int64_t k) {
  std::vector<cplx> roots(static_cast<std::size_t>(k));
  for (std::int64_t r = 0; r < k; ++r) {
    roots[static_cast<std::size_t>(r)] =
        std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(k));
  }
  return roots;
}

/// <m, y> mod K, computed in integers.
inline std::size_t phase_index(const Index& m, const Index& y, std::size_t dim, std::int64_t k) {
  std::int64_t acc = 0;
  for (std::size_t ax = 0; ax < dim; ++ax) acc += floor_mod(m[ax] * y[ax], k);
  return static_cast<std::size_t>(floor_mod(acc, k));
}

inline Index scaled(const Index& n, std::int64_t s, std::size_t dim) {
  Index out{};
  for (std::size_t ax = 0; ax < dim; ++ax) out[ax] = n[ax] * s;
  return out;
}

inline Index negated(const Index& n, std::size_t dim) { return scaled(n, -1, dim); }

/// Every n with (support + n*step) intersecting `target`.
inline IndexBox shifts_meeting(const IndexBox& support, const IndexBox& target, std::int64_t step) {
  const std::size_t d = support.dimension();
  Index lo{}, hi{};
  for (std::size_t ax = 0; ax < d; ++ax) {
    // n*step + support.lo <= target.hi and n*step + support.hi >= target.lo
    hi[ax] = floor_div(target.hi()[ax] - support.lo()[ax], step);
    lo[ax] = -floor_div(support.hi()[ax] - target.lo()[ax], step);
  }
  return IndexBox(d, lo, hi);
}

/// Lattice points y = c + k*step (k in Z^d) lying in `support`, as a box of k.
inline IndexBox residue_class(const Index& c, const IndexBox& support, std::int64_t step) {
  const std::size_t d = support.dimension();
  Index lo{}, hi{};
  for (std::size_t ax = 0; ax < d; ++ax) {
    lo[ax] = -floor_div(c[ax] - support.lo()[ax], step);
    hi[ax] = floor_div(support.hi()[ax] - c[ax], step);
  }
  return IndexBox(d, lo, hi);
}

/// Empty box of dimension d.
inline IndexBox empty_box(std::size_t d) { return IndexBox::cube(d, 0, -1); }

}  // namespace gabor::detail
