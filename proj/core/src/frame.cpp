#include "gabor/frame.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "detail.hpp"
#include "gabor/errors.hpp"
#include "gabor/parallel.hpp"
#include "gabor/summation.hpp"

namespace gabor {

namespace {

constexpr double kDegenerateFloor = 1e-12;

IndexBox support_or_throw(const GridFunction& w, const char* name) {
  auto s = w.support();
  if (!s) throw DegeneratePairError(std::string(name) + " is identically zero");
  return *s;
}

bool same_values(const GridFunction& x, const GridFunction& y) {
  return std::equal(x.values().begin(), x.values().end(), y.values().begin(), y.values().end());
}

}  // namespace

GaborSystem::GaborSystem(GridFunction g, GridFunction gamma, double a, double b)
    : g_(std::move(g)), gamma_(std::move(gamma)), a_(a), b_(b) {
  require_same_grid(g_, gamma_);
  if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("lattice parameters a, b must be positive");
  const Grid& grid = g_.grid();
  time_step_ = grid.steps(a, "lattice parameter a");
  freq_period_ = grid.steps(1.0 / b, "1/b");
  g_support_ = support_or_throw(g_, "analysis window g");
  gamma_support_ = support_or_throw(gamma_, "synthesis window gamma");
  normalization_ = inner_product(gamma_, g_);
  if (std::abs(normalization_) <= kDegenerateFloor) {
    throw DegeneratePairError("<gamma, g> vanishes; the pair cannot be normalized");
  }
  self_dual_ = same_values(g_, gamma_);

  const std::size_t d = grid.dimension();
  time_range_ = detail::shifts_meeting(g_support_, grid.domain(), time_step_)
                    .intersect(detail::shifts_meeting(gamma_support_, grid.domain(), time_step_));
  const std::int64_t k = freq_period_;
  freq_range_ = IndexBox::cube(d, -(k / 2), k - 1 - k / 2);
}

GaborSystem GaborSystem::self_dual(const GridFunction& g, double a, double b) {
  return GaborSystem(g, g, a, b);
}

cplx CoefficientLattice::at(const Index& n, const Index& m) const {
  if (!time.contains(n) || !freq.contains(m)) throw RangeError("lattice index out of range");
  return entries[time.flat(n) * freq.size() + freq.flat(m)];
}

cplx stft(const GridFunction& f, const GridFunction& g, const Vec& t, const Vec& omega) {
  return inner_product(f, tf_shift(g, t, omega));
}

CoefficientLattice gabor_coefficients(const GridFunction& f, const GaborSystem& sys) {
  require_same_grid(f, sys.g());
  const Grid& grid = sys.grid();
  const std::size_t d = grid.dimension();
  const std::int64_t step = sys.time_step();
  const std::int64_t k = sys.freq_period();
  const auto roots = detail::roots_of_unity(k);
  const double vol = grid.cell_volume();

  CoefficientLattice out;
  out.time = sys.time_range();
  out.freq = sys.freq_range();
  out.a = sys.a();
  out.b = sys.b();
  out.entries.assign(out.time.size() * out.freq.size(), cplx{});

  const auto f_support = f.support();
  if (!f_support) return out;
  const IndexBox base = grid.domain().intersect(*f_support);

  parallel_for(out.time.size(), [&](std::size_t row) {
    const Index n = out.time.at(row);
    const Index shift = detail::scaled(n, step, d);
    const IndexBox overlap = base.intersect(sys.g_support().shifted(shift));
    if (overlap.empty()) return;

    std::vector<cplx> prod(overlap.size());
    std::vector<Index> ys(overlap.size());
    for (std::size_t i = 0; i < overlap.size(); ++i) {
      const Index y = overlap.at(i);
      Index src = y;
      for (std::size_t ax = 0; ax < d; ++ax) src[ax] -= shift[ax];
      prod[i] = f.at(y) * std::conj(sys.g().at(src));
      ys[i] = y;
    }
    cplx* dst = out.entries.data() + row * out.freq.size();
    for (std::size_t col = 0; col < out.freq.size(); ++col) {
      const Index m = out.freq.at(col);
      const Index neg_m = detail::negated(m, d);
      const cplx s = pairwise_sum<cplx>(prod.size(), [&](std::size_t i) {
        return prod[i] * roots[detail::phase_index(neg_m, ys[i], d, k)];
      });
      dst[col] = s * vol;
    }
  });
  return out;
}

GridFunction synthesize(const CoefficientLattice& coeffs, const GaborSystem& sys) {
  const Grid& grid = sys.grid();
  const std::size_t d = grid.dimension();
  const std::int64_t step = sys.time_step();
  const std::int64_t k = sys.freq_period();
  const auto roots = detail::roots_of_unity(k);
  const double ab_d = std::pow(sys.a() * sys.b(), static_cast<double>(d));
  const cplx scale = ab_d / sys.normalization();
  const IndexBox& gsup = sys.gamma_support();
  const auto& domain = grid.domain();

  std::vector<cplx> values(grid.size());
  parallel_for(grid.size(), [&](std::size_t flat) {
    const Index x = domain.at(flat);
    // n with x - n*step inside supp(gamma).
    Index lo{}, hi{};
    for (std::size_t ax = 0; ax < d; ++ax) {
      hi[ax] = floor_div(x[ax] - gsup.lo()[ax], step);
      lo[ax] = -floor_div(gsup.hi()[ax] - x[ax], step);
    }
    const IndexBox ns = IndexBox(d, lo, hi).intersect(coeffs.time);
    if (ns.empty()) return;
    const cplx total = pairwise_sum<cplx>(ns.size(), [&](std::size_t i) {
      const Index n = ns.at(i);
      Index src = x;
      for (std::size_t ax = 0; ax < d; ++ax) src[ax] -= n[ax] * step;
      const cplx gv = sys.gamma().at(src);
      if (gv == cplx{}) return cplx{};
      const cplx* row = coeffs.entries.data() + coeffs.time.flat(n) * coeffs.freq.size();
      const cplx s = pairwise_sum<cplx>(coeffs.freq.size(), [&](std::size_t c) {
        return row[c] * roots[detail::phase_index(coeffs.freq.at(c), x, d, k)];
      });
      return gv * s;
    });
    values[flat] = scale * total;
  });
  return GridFunction(grid, std::move(values));
}

GridFunction apply_frame_direct(const GridFunction& f, const GaborSystem& sys) {
  return synthesize(gabor_coefficients(f, sys), sys);
}

GridFunction reconstruct_integral(const GridFunction& f, const GridFunction& g,
                                  const GridFunction& gamma, const TfGridSteps& steps) {
  require_same_grid(f, g);
  require_same_grid(f, gamma);
  const cplx norm = inner_product(gamma, g);
  if (std::abs(norm) <= kDegenerateFloor) {
    throw DegeneratePairError("<gamma, g> vanishes; the inversion formula is undefined");
  }
  if (!(steps.domega > 0.0) || !(steps.omega_max >= 0.0)) {
    throw ConfigError("frequency step must be positive and the band nonnegative");
  }
  const Grid& grid = f.grid();
  const std::size_t d = grid.dimension();
  const std::int64_t step = grid.steps(steps.dt, "time step dt");
  const auto f_support = f.support();
  if (!f_support) return GridFunction(grid);
  const IndexBox g_sup = support_or_throw(g, "analysis window g");
  const IndexBox gamma_sup = support_or_throw(gamma, "synthesis window gamma");

  const IndexBox times = detail::shifts_meeting(g_sup, f_support->intersect(grid.domain()), step)
                             .intersect(detail::shifts_meeting(gamma_sup, grid.domain(), step));
  const auto mmax = static_cast<std::int64_t>(std::floor(steps.omega_max / steps.domega + 1e-9));
  const IndexBox freqs = IndexBox::symmetric(d, mmax);
  const double vol = grid.cell_volume();
  const auto& domain = grid.domain();

  auto phase = [&](const Index& m, const Index& x) {
    double turns = 0.0;
    for (std::size_t ax = 0; ax < d; ++ax) {
      turns += static_cast<double>(m[ax]) * steps.domega * grid.position(x[ax]);
    }
    return unit_phase(turns);
  };

  // Analysis: F(n, m) = <f, tau(n dt, m domega) g>.
  std::vector<cplx> coeffs(times.size() * freqs.size());
  const IndexBox base = domain.intersect(*f_support);
  parallel_for(times.size(), [&](std::size_t row) {
    const Index n = times.at(row);
    const Index shift = detail::scaled(n, step, d);
    const IndexBox overlap = base.intersect(g_sup.shifted(shift));
    for (std::size_t col = 0; col < freqs.size(); ++col) {
      const Index m = freqs.at(col);
      const cplx s = pairwise_sum<cplx>(overlap.size(), [&](std::size_t i) {
        const Index y = overlap.at(i);
        Index src = y;
        for (std::size_t ax = 0; ax < d; ++ax) src[ax] -= shift[ax];
        return f.at(y) * std::conj(g.at(src) * phase(m, y));
      });
      coeffs[row * freqs.size() + col] = s * vol;
    }
  });

  double peak = 0.0;
  for (const auto& c : coeffs) peak = std::max(peak, std::abs(c));
  const double cutoff = steps.floor * peak;

  const double cell = std::pow(steps.dt * steps.domega, static_cast<double>(d));
  const cplx scale = cell / norm;
  std::vector<cplx> values(grid.size());
  parallel_for(grid.size(), [&](std::size_t flat) {
    const Index x = domain.at(flat);
    cplx acc{};
    for (std::size_t row = 0; row < times.size(); ++row) {
      const Index n = times.at(row);
      Index src = x;
      for (std::size_t ax = 0; ax < d; ++ax) src[ax] -= n[ax] * step;
      const cplx gv = gamma.at(src);
      if (gv == cplx{}) continue;
      const cplx s = pairwise_sum<cplx>(freqs.size(), [&](std::size_t col) {
        const cplx c = coeffs[row * freqs.size() + col];
        if (std::abs(c) < cutoff) return cplx{};
        return c * phase(freqs.at(col), x);
      });
      acc += gv * s;
    }
    values[flat] = scale * acc;
  });
  return GridFunction(grid, std::move(values));
}

FrameBoundEstimate estimate_frame_bounds(const GaborSystem& sys, int iterations, std::uint64_t seed,
                                         double tol) {
  if (!sys.is_self_dual()) {
    throw ConfigError("frame-bound estimation needs g = gamma");
  }
  if (iterations < 1) throw ConfigError("iterations must be >= 1");
  const Grid& grid = sys.grid();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<cplx> start(grid.size());
  for (auto& v : start) v = cplx(normal(rng), normal(rng));
  GridFunction v(grid, std::move(start));
  v = (1.0 / l2_norm(v)) * v;

  FrameBoundEstimate est;
  double previous = 0.0;
  for (int it = 1; it <= iterations; ++it) {
    const GridFunction w = apply_frame_direct(v, sys);
    const double rayleigh = inner_product(w, v).real() / inner_product(v, v).real();
    est.upper = rayleigh;
    est.iterations = it;
    if (it > 1 && std::abs(rayleigh - previous) <= tol * std::abs(rayleigh)) {
      est.converged = true;
      break;
    }
    previous = rayleigh;
    const double nw = l2_norm(w);
    if (nw == 0.0) {
      est.converged = true;
      break;
    }
    v = (1.0 / nw) * w;
  }
  return est;
}

}  // namespace gabor
