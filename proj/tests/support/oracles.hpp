#pragma once

// Independent reference computations for the tests. They work on raw 1-D
// sample arrays with naive loops and floating-point phases, sharing nothing
// with the library kernels beyond the sampled input values.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "gabor/grid.hpp"

namespace oracle {

using cplx = std::complex<double>;

/// Samples of a 1-D function on lattice indices [j0, j0 + size).
struct Line {
  std::int64_t j0 = 0;
  std::vector<cplx> v;

  cplx at(std::int64_t j) const {
    const std::int64_t i = j - j0;
    return (i < 0 || i >= static_cast<std::int64_t>(v.size())) ? cplx{} : v[static_cast<std::size_t>(i)];
  }
  std::int64_t end() const { return j0 + static_cast<std::int64_t>(v.size()); }
};

inline Line line(const gabor::GridFunction& f) {
  Line out;
  out.j0 = f.grid().domain().lo()[0];
  out.v.assign(f.values().begin(), f.values().end());
  return out;
}

inline cplx expi(double turns) { return std::polar(1.0, 2.0 * std::numbers::pi * turns); }

/// h sum f conj(g).
inline cplx inner(const Line& f, const Line& g, double h) {
  cplx s{};
  for (std::int64_t j = f.j0; j < f.end(); ++j) s += f.at(j) * std::conj(g.at(j));
  return s * h;
}

/// S f(x) = ab/<gamma,g> sum_n sum_{m=0}^{K-1} <f, M_{mb} T_{na} g> M_{mb} T_{na} gamma,
/// with A = a/h, K = 1/(bh) and n over every shift that can reach the domain.
inline Line frame_operator(const Line& g, const Line& gamma, const Line& f, double h, std::int64_t A,
                           std::int64_t K) {
  const double a = static_cast<double>(A) * h;
  const double b = 1.0 / (static_cast<double>(K) * h);
  const cplx norm = inner(gamma, g, h);
  const std::int64_t span = f.end() - f.j0;
  const std::int64_t nmax = (span + static_cast<std::int64_t>(g.v.size() + gamma.v.size())) / A + 2;
  Line out{f.j0, std::vector<cplx>(f.v.size())};
  for (std::int64_t n = -nmax; n <= nmax; ++n) {
    for (std::int64_t m = 0; m < K; ++m) {
      cplx c{};
      for (std::int64_t y = f.j0; y < f.end(); ++y) {
        const cplx gv = g.at(y - n * A);
        if (gv == cplx{}) continue;
        c += f.at(y) * std::conj(gv * expi(static_cast<double>(m) * b * static_cast<double>(y) * h));
      }
      c *= h;
      if (c == cplx{}) continue;
      for (std::int64_t x = f.j0; x < f.end(); ++x) {
        const cplx yv = gamma.at(x - n * A);
        if (yv == cplx{}) continue;
        out.v[static_cast<std::size_t>(x - f.j0)] +=
            c * yv * expi(static_cast<double>(m) * b * static_cast<double>(x) * h);
      }
    }
  }
  for (auto& v : out.v) v *= a * b / norm;
  return out;
}

/// G_n(c) = sum_k conj(g(c + kA - nK)) gamma(c + kA), k over everything that can hit a sample.
inline cplx correlation(const Line& g, const Line& gamma, std::int64_t n, std::int64_t A, std::int64_t K,
                        std::int64_t c) {
  cplx s{};
  const std::int64_t kmax = (std::abs(gamma.j0) + std::abs(gamma.end()) + std::abs(c)) / A + 2;
  for (std::int64_t k = -kmax; k <= kmax; ++k) {
    const std::int64_t y = c + k * A;
    s += std::conj(g.at(y - n * K)) * gamma.at(y);
  }
  return s;
}

/// <gamma, M_{l/a} T_{n/b} g> = h sum_y gamma(y) conj(g(y - nK)) exp(-2 pi i l y h / a).
inline cplx janssen(const Line& g, const Line& gamma, std::int64_t l, std::int64_t n, double h, std::int64_t A,
                    std::int64_t K) {
  cplx s{};
  for (std::int64_t y = gamma.j0; y < gamma.end(); ++y) {
    const cplx gv = g.at(y - n * K);
    if (gv == cplx{}) continue;
    s += gamma.at(y) * std::conj(gv) * expi(-static_cast<double>(l * y) / static_cast<double>(A));
  }
  return s * h;
}

/// Closed forms of the cardinal B-splines of order 2 and 3.
inline double hat(double x) { return (x >= 0.0 && x < 2.0) ? 1.0 - std::abs(x - 1.0) : 0.0; }
inline double quadratic_bspline(double x) {
  if (x < 0.0 || x >= 3.0) return 0.0;
  if (x < 1.0) return 0.5 * x * x;
  if (x < 2.0) return 0.5 * (-2.0 * x * x + 6.0 * x - 3.0);
  return 0.5 * (3.0 - x) * (3.0 - x);
}

/// Depth-k fat Cantor intervals by explicit recursion on (left, length) pairs.
inline std::vector<std::pair<double, double>> fat_cantor(int depth) {
  std::vector<std::pair<double, double>> pieces{{0.0, 1.0}};
  double gap = 0.25;
  for (int j = 1; j <= depth; ++j) {
    std::vector<std::pair<double, double>> next;
    for (auto [l, len] : pieces) {
      const double half = (len - gap) / 2.0;
      next.emplace_back(l, half);
      next.emplace_back(l + half + gap, half);
    }
    pieces = std::move(next);
    gap /= 4.0;
  }
  std::vector<std::pair<double, double>> out;
  for (auto [l, len] : pieces) out.emplace_back(l, l + len);
  return out;
}

}  // namespace oracle
