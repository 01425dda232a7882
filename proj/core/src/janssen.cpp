#include "gabor/janssen.hpp"

#include <algorithm>
#include <cmath>

#include "detail.hpp"
#include "gabor/errors.hpp"
#include "gabor/parallel.hpp"
#include "gabor/summation.hpp"

namespace gabor {

namespace {

std::int64_t shell_of(const Index& l, const Index& n, std::size_t d) {
  std::int64_t s = 0;
  for (std::size_t ax = 0; ax < d; ++ax) s = std::max({s, std::abs(l[ax]), std::abs(n[ax])});
  return s;
}

IndexBox frequency_box(std::size_t d, int L, std::int64_t period) {
  if (2 * static_cast<std::int64_t>(L) + 1 <= period) return IndexBox::symmetric(d, L);
  return IndexBox::cube(d, -(period / 2), period - 1 - period / 2);
}

void require_normalizable(cplx norm) {
  if (std::abs(norm) <= 1e-12) throw DegeneratePairError("<gamma, g> vanishes; cannot normalize");
}

}  // namespace

cplx JanssenLattice::at(const Index& l, const Index& n) const {
  if (!contains(l, n)) throw RangeError("Janssen index out of range");
  return entries[l_range.flat(l) * n_range.size() + n_range.flat(n)];
}

JanssenLattice janssen_coefficients(const GaborSystem& sys, int L, int N) {
  if (L < 0 || N < 0) throw ConfigError("Janssen truncation L, N must be nonnegative");
  const Grid& grid = sys.grid();
  const std::size_t d = grid.dimension();
  const std::int64_t period = sys.time_step();
  const std::int64_t k = sys.freq_period();
  const auto roots = detail::roots_of_unity(period);
  const double vol = grid.cell_volume();

  JanssenLattice lat{grid,
                     frequency_box(d, L, period),
                     IndexBox::symmetric(d, N),
                     sys.a(),
                     sys.b(),
                     sys.normalization(),
                     0.0,
                     {}};
  lat.entries.assign(lat.l_range.size() * lat.n_range.size(), cplx{});

  parallel_for(lat.n_range.size(), [&](std::size_t col) {
    const Index n = lat.n_range.at(col);
    const Index shift = detail::scaled(n, k, d);
    const IndexBox overlap = sys.gamma_support().intersect(sys.g_support().shifted(shift));
    if (overlap.empty()) return;
    std::vector<cplx> prod(overlap.size());
    std::vector<Index> ys(overlap.size());
    for (std::size_t i = 0; i < overlap.size(); ++i) {
      const Index y = overlap.at(i);
      Index src = y;
      for (std::size_t ax = 0; ax < d; ++ax) src[ax] -= shift[ax];
      prod[i] = sys.gamma().at(y) * std::conj(sys.g().at(src));
      ys[i] = y;
    }
    for (std::size_t row = 0; row < lat.l_range.size(); ++row) {
      const Index neg_l = detail::negated(lat.l_range.at(row), d);
      const cplx s = pairwise_sum<cplx>(prod.size(), [&](std::size_t i) {
        return prod[i] * roots[detail::phase_index(neg_l, ys[i], d, period)];
      });
      lat.entries[row * lat.n_range.size() + col] = s * vol;
    }
  });
  // The origin entry is the system's own normalization inner product.
  lat.entries[lat.l_range.flat(Index{}) * lat.n_range.size() + lat.n_range.flat(Index{})] =
      sys.normalization();

  std::int64_t outer = 0;
  for (std::size_t r = 0; r < lat.l_range.size(); ++r) {
    for (std::size_t c = 0; c < lat.n_range.size(); ++c) {
      outer = std::max(outer, shell_of(lat.l_range.at(r), lat.n_range.at(c), d));
    }
  }
  for (std::size_t r = 0; r < lat.l_range.size(); ++r) {
    for (std::size_t c = 0; c < lat.n_range.size(); ++c) {
      if (shell_of(lat.l_range.at(r), lat.n_range.at(c), d) == outer) {
        lat.tail_mass += std::abs(lat.entries[r * lat.n_range.size() + c]);
      }
    }
  }
  return lat;
}

Summability coefficient_summability(const GaborSystem& sys, int max_shell) {
  if (max_shell < 0) throw ConfigError("max_shell must be nonnegative");
  const JanssenLattice lat = janssen_coefficients(sys, max_shell, max_shell);
  const std::size_t d = sys.grid().dimension();
  std::vector<double> per_shell(static_cast<std::size_t>(max_shell) + 1, 0.0);
  for (std::size_t r = 0; r < lat.l_range.size(); ++r) {
    for (std::size_t c = 0; c < lat.n_range.size(); ++c) {
      const auto s = shell_of(lat.l_range.at(r), lat.n_range.at(c), d);
      if (s <= max_shell) {
        per_shell[static_cast<std::size_t>(s)] += std::abs(lat.entries[r * lat.n_range.size() + c]);
      }
    }
  }
  Summability out;
  double running = 0.0;
  for (double v : per_shell) {
    running += v;
    out.partial_sums.push_back(running);
  }
  out.satisfied_heuristic = running > 0.0 && per_shell.back() < 1e-6 * running;
  return out;
}

GridFunction janssen_apply(const GridFunction& f, const JanssenLattice& lattice) {
  if (!(f.grid() == lattice.grid)) throw IncompatibleGridsError("lattice and function grids differ");
  require_normalizable(lattice.normalization);
  const Grid& grid = lattice.grid;
  const std::size_t d = grid.dimension();
  const std::int64_t period = grid.steps(lattice.a, "lattice parameter a");
  const std::int64_t k = grid.steps(1.0 / lattice.b, "1/b");
  const auto roots = detail::roots_of_unity(period);
  const auto& domain = grid.domain();
  const std::size_t terms = lattice.l_range.size() * lattice.n_range.size();
  const cplx scale = 1.0 / lattice.normalization;

  std::vector<cplx> values(grid.size());
  parallel_for(grid.size(), [&](std::size_t flat) {
    const Index x = domain.at(flat);
    const cplx s = pairwise_sum<cplx>(terms, [&](std::size_t t) {
      const cplx c = lattice.entries[t];
      if (c == cplx{}) return cplx{};
      const Index l = lattice.l_range.at(t / lattice.n_range.size());
      const Index n = lattice.n_range.at(t % lattice.n_range.size());
      Index src = x;
      for (std::size_t ax = 0; ax < d; ++ax) src[ax] -= n[ax] * k;
      const cplx fv = f.at(src);
      if (fv == cplx{}) return cplx{};
      return c * roots[detail::phase_index(l, x, d, period)] * fv;
    });
    values[flat] = scale * s;
  });
  return GridFunction(grid, std::move(values));
}

cplx commutation_phase(const Vec& t, const Vec& omega) {
  if (t.size() != omega.size()) throw UnsupportedDimensionError("t and omega differ in dimension");
  double turns = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) turns += t[i] * omega[i];
  return unit_phase(-turns);
}

GridFunction janssen_apply_tm(const GridFunction& f, const GaborSystem& sys, int L, int N) {
  require_same_grid(f, sys.g());
  const Grid& grid = sys.grid();
  const std::size_t d = grid.dimension();
  const IndexBox ls = frequency_box(d, L, sys.time_step());
  const IndexBox ns = IndexBox::symmetric(d, N);
  GridFunction acc(grid);
  for (std::size_t r = 0; r < ls.size(); ++r) {
    const Index l = ls.at(r);
    Vec omega(d);
    for (std::size_t ax = 0; ax < d; ++ax) omega[ax] = static_cast<double>(l[ax]) / sys.a();
    const GridFunction mg = modulate(sys.g(), omega);
    const GridFunction mf = modulate(f, omega);
    for (std::size_t c = 0; c < ns.size(); ++c) {
      const Index n = ns.at(c);
      const Index shift = detail::scaled(n, sys.freq_period(), d);
      const cplx coeff = inner_product(sys.gamma(), translate(mg, shift));
      if (coeff == cplx{}) continue;
      acc = acc + coeff * translate(mf, shift);
    }
  }
  return (1.0 / sys.normalization()) * acc;
}

CellFunction fourier_reconstruct_G(const JanssenLattice& lattice, const Index& n) {
  if (!lattice.n_range.contains(n)) throw RangeError("lattice has no row for this n");
  const Grid& grid = lattice.grid;
  const std::size_t d = grid.dimension();
  const std::int64_t period = grid.steps(lattice.a, "lattice parameter a");
  const auto roots = detail::roots_of_unity(period);
  CellFunction cf;
  cf.dimension = d;
  cf.period = period;
  cf.spacing = grid.spacing();
  const IndexBox cell = cf.cell();
  cf.values.assign(cell.size(), cplx{});
  const double inv_a_d = std::pow(lattice.a, -static_cast<double>(d));
  const std::size_t col = lattice.n_range.flat(n);
  for (std::size_t ci = 0; ci < cell.size(); ++ci) {
    const Index x = cell.at(ci);
    const cplx s = pairwise_sum<cplx>(lattice.l_range.size(), [&](std::size_t r) {
      return lattice.entries[r * lattice.n_range.size() + col] *
             roots[detail::phase_index(lattice.l_range.at(r), x, d, period)];
    });
    cf.values[ci] = inv_a_d * s;
  }
  return cf;
}

cplx cell_fourier_coefficient(const CellFunction& cell_fn, const Index& l) {
  const IndexBox cell = cell_fn.cell();
  const auto roots = detail::roots_of_unity(cell_fn.period);
  const Index neg_l = detail::negated(l, cell_fn.dimension);
  const cplx s = pairwise_sum<cplx>(cell.size(), [&](std::size_t ci) {
    return cell_fn.values[ci] * roots[detail::phase_index(neg_l, cell.at(ci), cell_fn.dimension, cell_fn.period)];
  });
  // a^-d h^d = period^-d
  return s * std::pow(static_cast<double>(cell_fn.period), -static_cast<double>(cell_fn.dimension));
}

WexlerRazResult wexler_raz_check(const GaborSystem& sys, int L, int N, double tol) {
  require_normalizable(sys.normalization());
  const JanssenLattice lat = janssen_coefficients(sys, L, N);
  WexlerRazResult out;
  out.l_range = lat.l_range;
  out.n_range = lat.n_range;
  out.normalized.resize(lat.entries.size());
  const std::size_t origin = lat.l_range.flat(Index{}) * lat.n_range.size() + lat.n_range.flat(Index{});
  for (std::size_t i = 0; i < lat.entries.size(); ++i) {
    out.normalized[i] = lat.entries[i] / lat.normalization;
    if (i != origin) out.max_offdiag = std::max(out.max_offdiag, std::abs(out.normalized[i]));
  }
  out.diag = out.normalized[origin];
  out.is_biorthogonal = std::abs(out.diag - 1.0) <= tol && out.max_offdiag <= tol;
  return out;
}

}  // namespace gabor
