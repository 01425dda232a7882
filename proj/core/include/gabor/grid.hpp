#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

namespace gabor {

using cplx = std::complex<double>;

/// Largest supported spatial dimension.
inline constexpr std::size_t kMaxDim = 3;

/// Integer multi-index. Only the first `dimension` components are meaningful;
/// the rest are kept at zero so that value comparisons work.
using Index = std::array<std::int64_t, kMaxDim>;

/// Real vector in R^d (translations, frequencies).
using Vec = std::vector<double>;

/// Floor division and non-negative remainder for lattice arithmetic.
constexpr std::int64_t floor_div(std::int64_t x, std::int64_t m) {
  const std::int64_t q = x / m;
  return (x % m != 0 && ((x < 0) != (m < 0))) ? q - 1 : q;
}
constexpr std::int64_t floor_mod(std::int64_t x, std::int64_t m) {
  return x - floor_div(x, m) * m;
}

/// Rectangular box [lo, hi] (inclusive on every axis) in Z^d, iterated row-major.
class IndexBox {
 public:
  IndexBox() = default;
  IndexBox(std::size_t dimension, Index lo, Index hi);
  /// [-radius, radius]^d.
  static IndexBox symmetric(std::size_t dimension, std::int64_t radius);
  static IndexBox cube(std::size_t dimension, std::int64_t lo, std::int64_t hi);

  std::size_t dimension() const noexcept { return dim_; }
  const Index& lo() const noexcept { return lo_; }
  const Index& hi() const noexcept { return hi_; }
  bool empty() const noexcept { return count_ == 0; }
  std::size_t size() const noexcept { return count_; }
  std::int64_t extent(std::size_t axis) const noexcept {
    return hi_[axis] - lo_[axis] + 1;
  }

  bool contains(const Index& idx) const noexcept;
  std::size_t flat(const Index& idx) const noexcept;
  Index at(std::size_t flat) const noexcept;

  /// Intersection with another box of the same dimension (possibly empty).
  IndexBox intersect(const IndexBox& other) const;
  IndexBox shifted(const Index& offset) const;

  friend bool operator==(const IndexBox&, const IndexBox&) = default;

 private:
  std::size_t dim_ = 0;
  Index lo_{};
  Index hi_{};
  std::size_t count_ = 0;
};

/// Uniform sampling of [-T, T)^d with spacing h = 1/M.
///
/// Sample points are x = j*h for integer lattice coordinates j in
/// [-N/2, N/2)^d, so the origin and all integer points lie on the grid and each
/// unit cube [k, k+1)^d holds exactly M^d samples. Construction snaps h to
/// 1/round(1/h) and T up to the nearest half-even multiple of h.
class Grid {
 public:
  Grid(std::size_t dimension, double spacing, double half_extent);

  std::size_t dimension() const noexcept { return dim_; }
  double spacing() const noexcept { return h_; }
  double half_extent() const noexcept { return T_; }
  std::int64_t samples_per_axis() const noexcept { return n_; }
  std::int64_t samples_per_unit() const noexcept { return m_; }
  std::size_t size() const noexcept { return box_.size(); }
  double cell_volume() const noexcept;

  /// Lattice coordinates covered by the grid.
  const IndexBox& domain() const noexcept { return box_; }

  double position(std::int64_t j) const noexcept { return static_cast<double>(j) * h_; }

  /// Converts a real translation to lattice units, rejecting non-multiples of h.
  Index to_lattice(const Vec& t) const;
  /// Converts a real length (e.g. a lattice parameter) to a positive number of samples.
  std::int64_t steps(double length, const char* what) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t dim_;
  double h_;
  double T_;
  std::int64_t m_;
  std::int64_t n_;
  IndexBox box_;
};

/// Complex samples on a grid; immutable after construction.
///
/// Values outside the domain are zero. Windows are treated as functions on
/// the whole lattice hZ^d with finite support, so translated copies that leave
/// the domain lose nothing from inner products against on-grid functions.
class GridFunction {
 public:
  explicit GridFunction(Grid grid);
  GridFunction(Grid grid, std::vector<cplx> values);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const cplx> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  cplx operator[](std::size_t flat) const noexcept { return values_[flat]; }

  /// Value at lattice coordinates; zero outside the domain.
  cplx at(const Index& j) const noexcept;

  /// Smallest box containing every nonzero sample; nullopt for the zero function.
  std::optional<IndexBox> support() const;

 private:
  Grid grid_;
  std::vector<cplx> values_;
};

GridFunction operator+(const GridFunction& f, const GridFunction& g);
GridFunction operator-(const GridFunction& f, const GridFunction& g);
GridFunction operator*(cplx c, const GridFunction& f);
/// Pointwise product.
GridFunction multiply(const GridFunction& f, const GridFunction& g);

void require_same_grid(const GridFunction& f, const GridFunction& g);

/// (T_t f)(x) = f(x - t). Samples shifted out of the domain are dropped.
GridFunction translate(const GridFunction& f, const Vec& t);
GridFunction translate(const GridFunction& f, const Index& shift);

/// (M_w f)(x) = exp(2 pi i <w, x>) f(x).
GridFunction modulate(const GridFunction& f, const Vec& omega);

/// (tau(t, w) g)(x) = g(x - t) exp(2 pi i <x, w>), i.e. M_w T_t.
GridFunction tf_shift(const GridFunction& g, const Vec& t, const Vec& omega);

/// h^d * sum f(x) conj(g(x)).
cplx inner_product(const GridFunction& f, const GridFunction& g);
double l2_norm(const GridFunction& f);

/// exp(2 pi i * turns) with the integer part of `turns` removed first.
cplx unit_phase(double turns);

/// CSV with columns x_1..x_d, re, im; one row per sample, 17 significant digits.
void write_csv(std::ostream& out, const GridFunction& f);

}  // namespace gabor
