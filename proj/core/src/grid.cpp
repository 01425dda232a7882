#include "gabor/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <string>

#include "gabor/errors.hpp"
#include "gabor/summation.hpp"

namespace gabor {

// ---------------------------------------------------------------------------
// IndexBox

IndexBox::IndexBox(std::size_t dimension, Index lo, Index hi)
    : dim_(dimension), lo_(lo), hi_(hi) {
  if (dimension == 0 || dimension > kMaxDim) {
    throw UnsupportedDimensionError("dimension must be in [1, " +
                                    std::to_string(kMaxDim) + "]");
  }
  count_ = 1;
  for (std::size_t ax = 0; ax < kMaxDim; ++ax) {
    if (ax >= dim_) {
      lo_[ax] = hi_[ax] = 0;
      continue;
    }
    if (hi_[ax] < lo_[ax]) {
      count_ = 0;
    } else if (count_ != 0) {
      count_ *= static_cast<std::size_t>(hi_[ax] - lo_[ax] + 1);
    }
  }
}

IndexBox IndexBox::symmetric(std::size_t dimension, std::int64_t radius) {
  return cube(dimension, -radius, radius);
}

IndexBox IndexBox::cube(std::size_t dimension, std::int64_t lo, std::int64_t hi) {
  Index l{}, h{};
  for (std::size_t ax = 0; ax < dimension && ax < kMaxDim; ++ax) {
    l[ax] = lo;
    h[ax] = hi;
  }
  return IndexBox(dimension, l, h);
}

bool IndexBox::contains(const Index& idx) const noexcept {
  if (count_ == 0) return false;
  for (std::size_t ax = 0; ax < dim_; ++ax) {
    if (idx[ax] < lo_[ax] || idx[ax] > hi_[ax]) return false;
  }
  return true;
}

std::size_t IndexBox::flat(const Index& idx) const noexcept {
  std::size_t f = 0;
  for (std::size_t ax = 0; ax < dim_; ++ax) {
    f = f * static_cast<std::size_t>(extent(ax)) +
        static_cast<std::size_t>(idx[ax] - lo_[ax]);
  }
  return f;
}

Index IndexBox::at(std::size_t flat) const noexcept {
  Index idx{};
  for (std::size_t ax = dim_; ax-- > 0;) {
    const auto e = static_cast<std::size_t>(extent(ax));
    idx[ax] = lo_[ax] + static_cast<std::int64_t>(flat % e);
    flat /= e;
  }
  return idx;
}

IndexBox IndexBox::intersect(const IndexBox& other) const {
  Index l{}, h{};
  for (std::size_t ax = 0; ax < dim_; ++ax) {
    l[ax] = std::max(lo_[ax], other.lo_[ax]);
    h[ax] = std::min(hi_[ax], other.hi_[ax]);
  }
  if (empty() || other.empty()) {
    h = l;
    for (std::size_t ax = 0; ax < dim_; ++ax) h[ax] = l[ax] - 1;
  }
  return IndexBox(dim_, l, h);
}

IndexBox IndexBox::shifted(const Index& offset) const {
  Index l = lo_, h = hi_;
  for (std::size_t ax = 0; ax < dim_; ++ax) {
    l[ax] += offset[ax];
    h[ax] += offset[ax];
  }
  return IndexBox(dim_, l, h);
}

// ---------------------------------------------------------------------------
// Grid

namespace {

constexpr double kCommensurabilityTol = 1e-9;

std::int64_t nearest_integer(double v, const char* what) {
  const double r = std::round(v);
  if (!std::isfinite(v) || std::abs(v - r) > kCommensurabilityTol * std::max(1.0, std::abs(v))) {
    throw CommensurabilityError(std::string(what) + " is not an integer multiple of the grid spacing");
  }
  return static_cast<std::int64_t>(r);
}

}  // namespace

Grid::Grid(std::size_t dimension, double spacing, double half_extent) : dim_(dimension) {
  if (dimension == 0 || dimension > kMaxDim) {
    throw UnsupportedDimensionError("grid dimension must be in [1, " + std::to_string(kMaxDim) + "]");
  }
  if (!(spacing > 0.0) || spacing > 1.0) {
    throw ConfigError("grid spacing must lie in (0, 1]");
  }
  if (!(half_extent > 0.0) || !std::isfinite(half_extent)) {
    throw ConfigError("grid half extent must be positive");
  }
  m_ = std::max<std::int64_t>(1, std::llround(1.0 / spacing));
  h_ = 1.0 / static_cast<double>(m_);
  // N = round(2T/h), bumped to even so that T/h is an integer.
  n_ = static_cast<std::int64_t>(std::llround(2.0 * half_extent / h_));
  if (n_ % 2 != 0) ++n_;
  n_ = std::max<std::int64_t>(n_, 2);
  T_ = static_cast<double>(n_ / 2) * h_;
  box_ = IndexBox::cube(dim_, -n_ / 2, n_ / 2 - 1);
}

double Grid::cell_volume() const noexcept { return std::pow(h_, static_cast<double>(dim_)); }

Index Grid::to_lattice(const Vec& t) const {
  if (t.size() != dim_) {
    throw UnsupportedDimensionError("vector has " + std::to_string(t.size()) +
                                    " components, grid dimension is " + std::to_string(dim_));
  }
  Index idx{};
  for (std::size_t ax = 0; ax < dim_; ++ax) {
    idx[ax] = nearest_integer(t[ax] * static_cast<double>(m_), "translation");
  }
  return idx;
}

std::int64_t Grid::steps(double length, const char* what) const {
  if (!(length > 0.0)) throw ConfigError(std::string(what) + " must be positive");
  const auto s = nearest_integer(length * static_cast<double>(m_), what);
  if (s <= 0) throw CommensurabilityError(std::string(what) + " is smaller than the grid spacing");
  return s;
}

// ---------------------------------------------------------------------------
// GridFunction

GridFunction::GridFunction(Grid grid) : grid_(grid), values_(grid.size(), cplx{}) {}

GridFunction::GridFunction(Grid grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw ConfigError("GridFunction expects " + std::to_string(grid_.size()) + " samples, got " +
                      std::to_string(values_.size()));
  }
}

cplx GridFunction::at(const Index& j) const noexcept {
  const auto& box = grid_.domain();
  if (!box.contains(j)) return {};
  return values_[box.flat(j)];
}

std::optional<IndexBox> GridFunction::support() const {
  const auto& box = grid_.domain();
  const std::size_t d = grid_.dimension();
  Index lo{}, hi{};
  bool any = false;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] == cplx{}) continue;
    const Index j = box.at(i);
    if (!any) {
      lo = hi = j;
      any = true;
      continue;
    }
    for (std::size_t ax = 0; ax < d; ++ax) {
      lo[ax] = std::min(lo[ax], j[ax]);
      hi[ax] = std::max(hi[ax], j[ax]);
    }
  }
  if (!any) return std::nullopt;
  return IndexBox(d, lo, hi);
}

void require_same_grid(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid() == g.grid())) throw IncompatibleGridsError("functions live on different grids");
}

namespace {

template <typename Op>
GridFunction zip(const GridFunction& f, const GridFunction& g, Op op) {
  require_same_grid(f, g);
  std::vector<cplx> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(f[i], g[i]);
  return GridFunction(f.grid(), std::move(out));
}

}  // namespace

GridFunction operator+(const GridFunction& f, const GridFunction& g) {
  return zip(f, g, std::plus<>{});
}
GridFunction operator-(const GridFunction& f, const GridFunction& g) {
  return zip(f, g, std::minus<>{});
}
GridFunction multiply(const GridFunction& f, const GridFunction& g) {
  return zip(f, g, std::multiplies<>{});
}
GridFunction operator*(cplx c, const GridFunction& f) {
  std::vector<cplx> out(f.values().begin(), f.values().end());
  for (auto& v : out) v *= c;
  return GridFunction(f.grid(), std::move(out));
}

GridFunction translate(const GridFunction& f, const Index& shift) {
  const auto& box = f.grid().domain();
  std::vector<cplx> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    Index src = box.at(i);
    for (std::size_t ax = 0; ax < box.dimension(); ++ax) src[ax] -= shift[ax];
    out[i] = f.at(src);
  }
  return GridFunction(f.grid(), std::move(out));
}

GridFunction translate(const GridFunction& f, const Vec& t) {
  return translate(f, f.grid().to_lattice(t));
}

cplx unit_phase(double turns) {
  const double frac = turns - std::floor(turns);
  return std::polar(1.0, 2.0 * std::numbers::pi * frac);
}

GridFunction modulate(const GridFunction& f, const Vec& omega) {
  const auto& grid = f.grid();
  if (omega.size() != grid.dimension()) {
    throw UnsupportedDimensionError("frequency vector dimension does not match the grid");
  }
  const auto& box = grid.domain();
  std::vector<cplx> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (f[i] == cplx{}) continue;
    const Index j = box.at(i);
    double turns = 0.0;
    for (std::size_t ax = 0; ax < grid.dimension(); ++ax) turns += omega[ax] * grid.position(j[ax]);
    out[i] = f[i] * unit_phase(turns);
  }
  return GridFunction(grid, std::move(out));
}

GridFunction tf_shift(const GridFunction& g, const Vec& t, const Vec& omega) {
  return modulate(translate(g, t), omega);
}

cplx inner_product(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  const auto sum = pairwise_sum<cplx>(f.size(), [&](std::size_t i) { return f[i] * std::conj(g[i]); });
  return sum * f.grid().cell_volume();
}

double l2_norm(const GridFunction& f) { return std::sqrt(std::max(0.0, inner_product(f, f).real())); }

void write_csv(std::ostream& out, const GridFunction& f) {
  const auto& grid = f.grid();
  const std::size_t d = grid.dimension();
  for (std::size_t ax = 0; ax < d; ++ax) out << "x_" << (ax + 1) << ',';
  out << "re,im\n";
  char buf[64];
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Index j = grid.domain().at(i);
    for (std::size_t ax = 0; ax < d; ++ax) {
      std::snprintf(buf, sizeof buf, "%.17g,", grid.position(j[ax]));
      out << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f[i].real(), f[i].imag());
    out << buf;
  }
}

}  // namespace gabor
