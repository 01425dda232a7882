#include "gabor/walnut.hpp"

#include <algorithm>
#include <cmath>

#include "detail.hpp"
#include "gabor/errors.hpp"
#include "gabor/parallel.hpp"
#include "gabor/summation.hpp"

namespace gabor {

cplx CellFunction::at(const Index& x) const {
  Index c{};
  for (std::size_t ax = 0; ax < dimension; ++ax) c[ax] = floor_mod(x[ax], period);
  return values[cell().flat(c)];
}

double CellFunction::sup_norm() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

namespace {

CellFunction empty_cell(const GaborSystem& sys) {
  CellFunction cf;
  cf.dimension = sys.grid().dimension();
  cf.period = sys.time_step();
  cf.spacing = sys.grid().spacing();
  cf.values.assign(cf.cell().size(), cplx{});
  return cf;
}

IndexBox member_range(const GaborSystem& sys) {
  const std::size_t d = sys.grid().dimension();
  const auto& gs = sys.g_support();
  const auto& ys = sys.gamma_support();
  const std::int64_t k = sys.freq_period();
  Index lo{}, hi{};
  for (std::size_t ax = 0; ax < d; ++ax) {
    // n*K in [lo(gamma) - hi(g), hi(gamma) - lo(g)]
    lo[ax] = -floor_div(gs.hi()[ax] - ys.lo()[ax], k);
    hi[ax] = floor_div(ys.hi()[ax] - gs.lo()[ax], k);
  }
  return IndexBox(d, lo, hi);
}

cplx correlation_sample(const GaborSystem& sys, const Index& n, const Index& c) {
  const std::size_t d = sys.grid().dimension();
  const std::int64_t step = sys.time_step();
  const Index shift = detail::scaled(n, sys.freq_period(), d);
  const IndexBox ks = detail::residue_class(c, sys.gamma_support(), step);
  return pairwise_sum<cplx>(ks.size(), [&](std::size_t i) {
    const Index k = ks.at(i);
    Index y = c, src{};
    for (std::size_t ax = 0; ax < d; ++ax) {
      y[ax] += k[ax] * step;
      src[ax] = y[ax] - shift[ax];
    }
    return std::conj(sys.g().at(src)) * sys.gamma().at(y);
  });
}

long double pow_ld(long double base, std::size_t d) {
  long double r = 1.0L;
  for (std::size_t i = 0; i < d; ++i) r *= base;
  return r;
}

bool is_origin(const Index& n, std::size_t d) {
  for (std::size_t ax = 0; ax < d; ++ax) {
    if (n[ax] != 0) return false;
  }
  return true;
}

}  // namespace

CorrelationFamily::CorrelationFamily(const GaborSystem& sys)
    : members_(member_range(sys)), shift_step_(sys.freq_period()) {
  const CellFunction blank = empty_cell(sys);
  cells_.assign(members_.size(), blank);
  const IndexBox cell = blank.cell();
  parallel_for(members_.size() * cell.size(), [&](std::size_t job) {
    const std::size_t mi = job / cell.size();
    const std::size_t ci = job % cell.size();
    cells_[mi].values[ci] = correlation_sample(sys, members_.at(mi), cell.at(ci));
  });
}

const CellFunction& CorrelationFamily::member(const Index& n) const {
  if (!members_.contains(n)) throw RangeError("correlation member outside the overlap range");
  return cells_[members_.flat(n)];
}

cplx CorrelationFamily::value(const Index& n, const Index& x) const {
  if (!members_.contains(n)) return {};
  return cells_[members_.flat(n)].at(x);
}

CellFunction correlation_fn(const GaborSystem& sys, const Index& n) {
  CellFunction cf = empty_cell(sys);
  if (!member_range(sys).contains(n)) return cf;
  const IndexBox cell = cf.cell();
  parallel_for(cell.size(), [&](std::size_t ci) {
    cf.values[ci] = correlation_sample(sys, n, cell.at(ci));
  });
  return cf;
}

CellFunction g_a(const GaborSystem& sys) {
  CellFunction cf = correlation_fn(sys, Index{});
  const cplx scale = std::pow(sys.a(), static_cast<double>(sys.grid().dimension())) / sys.normalization();
  for (auto& v : cf.values) v *= scale;
  return cf;
}

namespace {

enum class Terms { All, OffDiagonal };

GridFunction walnut_sum(const GridFunction& f, const GaborSystem& sys, const CorrelationFamily& family,
                        Terms terms) {
  require_same_grid(f, sys.g());
  const Grid& grid = sys.grid();
  const std::size_t d = grid.dimension();
  const auto& domain = grid.domain();
  const cplx scale = std::pow(sys.a(), static_cast<double>(d)) / sys.normalization();
  const IndexBox& members = family.members();
  const std::int64_t k = family.shift_step();

  std::vector<cplx> values(grid.size());
  parallel_for(grid.size(), [&](std::size_t flat) {
    const Index x = domain.at(flat);
    const cplx s = pairwise_sum<cplx>(members.size(), [&](std::size_t i) {
      const Index n = members.at(i);
      if (terms == Terms::OffDiagonal && is_origin(n, d)) return cplx{};
      Index src = x;
      for (std::size_t ax = 0; ax < d; ++ax) src[ax] -= n[ax] * k;
      const cplx fv = f.at(src);
      if (fv == cplx{}) return cplx{};
      return family.value(n, x) * fv;
    });
    values[flat] = scale * s;
  });
  return GridFunction(grid, std::move(values));
}

}  // namespace

GridFunction walnut_apply(const GridFunction& f, const GaborSystem& sys, const CorrelationFamily& family) {
  return walnut_sum(f, sys, family, Terms::All);
}

GridFunction walnut_apply(const GridFunction& f, const GaborSystem& sys) {
  return walnut_apply(f, sys, CorrelationFamily(sys));
}

double operator_norm_upper_bound(const GaborSystem& sys, const ExponentPair& /*pq*/) {
  const std::size_t d = sys.grid().dimension();
  const long double a = sys.a();
  const long double b = sys.b();
  const long double gw = wiener_norm(sys.g());
  const long double yw = wiener_norm(sys.gamma());
  const long double c = pow_ld(a, d) / static_cast<long double>(std::abs(sys.normalization())) *
                        pow_ld(1.0L + 1.0L / a, d) * pow_ld(2.0L + 2.0L * b, d);
  return static_cast<double>(c * gw * yw);
}

TranslateSum sum_translates(const GridFunction& g, double a) {
  const Grid& grid = g.grid();
  const std::size_t d = grid.dimension();
  const std::int64_t step = grid.steps(a, "translation step a");
  TranslateSum out;
  out.sum.dimension = d;
  out.sum.period = step;
  out.sum.spacing = grid.spacing();
  const IndexBox cell = out.sum.cell();
  out.sum.values.assign(cell.size(), cplx{});
  const auto support = g.support();
  if (support) {
    for (std::size_t ci = 0; ci < cell.size(); ++ci) {
      const Index c = cell.at(ci);
      const IndexBox ks = detail::residue_class(c, *support, step);
      out.sum.values[ci] = pairwise_sum<double>(ks.size(), [&](std::size_t i) {
        const Index k = ks.at(i);
        Index y = c;
        for (std::size_t ax = 0; ax < d; ++ax) y[ax] += k[ax] * step;
        return std::abs(g.at(y));
      });
    }
  }
  out.max = out.sum.sup_norm();
  out.bound = static_cast<double>(pow_ld(1.0L + 1.0L / static_cast<long double>(a), d) *
                                  static_cast<long double>(wiener_norm(g)));
  out.holds = out.max <= out.bound * (1.0 + 1e-12);
  return out;
}

TailSum tail_sum(const GaborSystem& sys, const CorrelationFamily& family) {
  const std::size_t d = sys.grid().dimension();
  const long double a_d = pow_ld(sys.a(), d);
  long double tail = 0.0L;
  long double full = 0.0L;
  const IndexBox& members = family.members();
  for (std::size_t i = 0; i < members.size(); ++i) {
    const Index n = members.at(i);
    const long double sup = family.member(n).sup_norm();
    full += sup;
    if (!is_origin(n, d)) tail += a_d * sup;
  }
  TailSum out;
  out.tail = static_cast<double>(tail);
  out.full_sum = static_cast<double>(full);
  const long double a = sys.a();
  const long double b = sys.b();
  out.bound = static_cast<double>(pow_ld(1.0L + 1.0L / a, d) * pow_ld(2.0L + 2.0L * b, d) *
                                  static_cast<long double>(wiener_norm(sys.g())) *
                                  static_cast<long double>(wiener_norm(sys.gamma())));
  out.within_bound = out.full_sum <= out.bound * (1.0 + 1e-12);
  return out;
}

TailSum tail_sum(const GaborSystem& sys) { return tail_sum(sys, CorrelationFamily(sys)); }

GridFunction apply_T(const GridFunction& f, const GaborSystem& sys) {
  require_same_grid(f, sys.g());
  const CellFunction ga = g_a(sys);
  const auto& domain = f.grid().domain();
  std::vector<cplx> values(f.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = (ga.at(domain.at(i)) - 1.0) * f[i];
  }
  return GridFunction(f.grid(), std::move(values));
}

GridFunction apply_R(const GridFunction& f, const GaborSystem& sys) {
  return walnut_sum(f, sys, CorrelationFamily(sys), Terms::OffDiagonal);
}

double g_a_deviation(const GaborSystem& sys) {
  const CellFunction ga = g_a(sys);
  double m = 0.0;
  for (const auto& v : ga.values) m = std::max(m, std::abs(v - 1.0));
  return m;
}

double m0_bound(const GaborSystem& sys) {
  const std::size_t d = sys.grid().dimension();
  std::vector<cplx> prod(sys.g().size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = std::conj(sys.g()[i]) * sys.gamma()[i];
  const double w = wiener_norm(GridFunction(sys.grid(), std::move(prod)));
  return static_cast<double>(pow_ld(2.0L, d) * w / std::abs(sys.normalization()));
}

}  // namespace gabor
