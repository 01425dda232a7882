#include "gabor/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>

#include <nlohmann/json.hpp>

#include "detail.hpp"
#include "gabor/errors.hpp"
#include "gabor/frame.hpp"
#include "gabor/summation.hpp"
#include "gabor/walnut.hpp"

namespace gabor {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_origin(const Index& n, std::size_t d) {
  for (std::size_t ax = 0; ax < d; ++ax) {
    if (n[ax] != 0) return false;
  }
  return true;
}

/// Samples of f whose translate by `shift` leaves the domain.
GridFunction escaping_part(const GridFunction& f, const Index& shift) {
  const Grid& grid = f.grid();
  const std::size_t d = grid.dimension();
  const IndexBox& domain = grid.domain();
  std::vector<cplx> values(f.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (f[i] == cplx{}) continue;
    Index y = domain.at(i);
    for (std::size_t ax = 0; ax < d; ++ax) y[ax] += shift[ax];
    if (!domain.contains(y)) values[i] = f[i];
  }
  return GridFunction(grid, std::move(values));
}

struct Windows {
  Grid grid;
  GridFunction g;
  GridFunction gamma;
  GridFunction f;
};

Windows sample_all(const SweepSchedule& s) {
  const Grid grid = s.grid.make();
  return {grid, sample_window(s.g, grid), sample_window(s.synthesis(), grid), sample_window(s.f, grid)};
}

enum class Mode { Convergence, OpNorm };

SweepRecord evaluate(const SweepSchedule& s, const Windows& w, double a, double b, Mode mode) {
  const auto t0 = std::chrono::steady_clock::now();
  const GaborSystem sys(w.g, w.gamma, a, b);
  const CorrelationFamily family(sys);
  const std::size_t d = w.grid.dimension();
  const double a_d = std::pow(a, static_cast<double>(d));
  const double norm_abs = std::abs(sys.normalization());

  SweepRecord r;
  r.a = a;
  r.b = b;
  const CellFunction& g0 = family.member(Index{});
  for (const auto& v : g0.values) {
    r.g_a_dev = std::max(r.g_a_dev, std::abs(a_d * v / sys.normalization() - 1.0));
  }
  const TailSum ts = tail_sum(sys, family);
  r.tail = ts.tail;
  r.norm_bound = operator_norm_upper_bound(sys, s.pq);
  r.opnorm_upper = r.g_a_dev + r.tail / norm_abs;
  r.opnorm_lower = std::max(0.0, r.g_a_dev - r.tail / norm_abs);

  if (mode == Mode::OpNorm) {
    r.bound_ok = ts.within_bound;
  } else {
    const IndexBox& members = family.members();
    for (std::size_t i = 0; i < members.size(); ++i) {
      const Index n = members.at(i);
      if (is_origin(n, d)) continue;
      const double sup = family.member(n).sup_norm();
      if (sup == 0.0) continue;
      const double lost = amalgam_norm(escaping_part(w.f, detail::scaled(n, family.shift_step(), d)), s.pq);
      r.boundary_residue += a_d * sup / norm_abs * lost;
    }
    if (r.boundary_residue > 0.0) {
      throw BoundaryMarginError("test function is not supported far enough from the grid boundary for a=" +
                                fmt(a) + ", b=" + fmt(b));
    }
    const GridFunction diff = walnut_apply(w.f, sys, family) - w.f;
    r.err_f = amalgam_norm(diff, s.pq);
    r.f_norm = amalgam_norm(w.f, s.pq);
    const GridFunction phi = sample_window(WindowSpec::gaussian(1.0, 4.0), w.grid);
    r.dual_pairing = std::abs(inner_product(diff, phi));
    // 1e-12 * ||f|| absorbs rounding when both sides vanish.
    r.bound_ok = r.err_f <= r.opnorm_upper * r.f_norm + r.boundary_residue + 1e-12 * r.f_norm;
  }
  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

SweepReport run_sweep(const SweepSchedule& schedule, Mode mode) {
  schedule.validate();
  const Windows w = sample_all(schedule);
  SweepReport report;
  std::vector<double> tracked;
  for (const auto& [a, b] : schedule.pairs) {
    report.records.push_back(evaluate(schedule, w, a, b, mode));
    const auto& r = report.records.back();
    tracked.push_back(mode == Mode::Convergence ? r.err_f : r.opnorm_upper);
  }
  report.trend_ratio = trend_ratio(tracked);
  report.strictly_decreasing = strictly_decreasing(tracked);
  const bool bounds = std::all_of(report.records.begin(), report.records.end(),
                                  [](const SweepRecord& r) { return r.bound_ok; });
  report.passed = bounds && (tracked.size() < 2 || report.trend_ratio < 0.2);
  return report;
}

Exponent exponent_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Exponent::parse(j.get<std::string>());
  return Exponent(j.get<double>());
}

nlohmann::json exponent_to_json(const Exponent& e) {
  if (e.is_infinite()) return "inf";
  return e.value();
}

}  // namespace

void SweepSchedule::validate() const {
  if (pairs.empty()) throw ConfigError("sweep schedule has no (a, b) pairs");
  g.validate();
  synthesis().validate();
  f.validate();
  const Grid gr = grid.make();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [a, b] = pairs[i];
    if (!(a > 0.0) || !(b > 0.0)) throw ConfigError("lattice parameters must be positive");
    if (i > 0 && !(a < pairs[i - 1].first && b < pairs[i - 1].second)) {
      throw ConfigError("schedule must have strictly decreasing a_j and b_j");
    }
    gr.steps(a, "lattice parameter a");
    gr.steps(1.0 / b, "1/b");
  }
}

std::vector<std::pair<double, double>> SweepSchedule::dyadic(int first, int last) {
  std::vector<std::pair<double, double>> out;
  for (int j = first; j <= last; ++j) out.emplace_back(std::ldexp(1.0, -j), std::ldexp(1.0, -j));
  return out;
}

std::vector<std::pair<double, double>> SweepSchedule::anisotropic(int first, int last) {
  std::vector<std::pair<double, double>> out;
  for (int j = first; j <= last; ++j) out.emplace_back(std::ldexp(1.0, -j), 1.0 / std::pow(3.0, j));
  return out;
}

double trend_ratio(const std::vector<double>& values) {
  if (values.empty()) return 0.0;
  const double first = values.front();
  const double last = values.back();
  if (first == 0.0) return last == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return last / first;
}

bool strictly_decreasing(const std::vector<double>& values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] < values[i - 1])) return false;
  }
  return true;
}

SweepReport convergence_sweep(const SweepSchedule& schedule) { return run_sweep(schedule, Mode::Convergence); }

SweepReport opnorm_sweep(const SweepSchedule& schedule) { return run_sweep(schedule, Mode::OpNorm); }

std::vector<RiemannPoint> riemann_uniformity(const WindowSpec& f_spec, const GridSpec& grid_spec,
                                             const std::vector<double>& a_list) {
  const Grid grid = grid_spec.make();
  const GridFunction f = sample_window(f_spec, grid);
  const std::size_t d = grid.dimension();
  const cplx integral = grid.cell_volume() * pairwise_sum<cplx>(f.size(), [&](std::size_t i) { return f[i]; });
  const auto support = f.support();

  std::vector<RiemannPoint> out;
  for (double a : a_list) {
    const std::int64_t step = grid.steps(a, "lattice parameter a");
    const double a_d = std::pow(a, static_cast<double>(d));
    const IndexBox cell = IndexBox::cube(d, 0, step - 1);
    RiemannPoint pt{a, 0.0};
    for (std::size_t ci = 0; ci < cell.size(); ++ci) {
      const Index c = cell.at(ci);
      cplx s{};
      if (support) {
        const IndexBox ks = detail::residue_class(c, *support, step);
        s = pairwise_sum<cplx>(ks.size(), [&](std::size_t i) {
          Index y = c;
          const Index k = ks.at(i);
          for (std::size_t ax = 0; ax < d; ++ax) y[ax] += k[ax] * step;
          return f.at(y);
        });
      }
      pt.deviation = std::max(pt.deviation, std::abs(a_d * s - integral));
    }
    out.push_back(pt);
  }
  return out;
}

std::vector<double> geometric_a_range(const CounterexampleOptions& o, double h) {
  if (!(o.ratio > 0.0 && o.ratio < 1.0)) throw ConfigError("geometric ratio must lie in (0, 1)");
  if (!(o.a_min > 0.0) || o.a_max < o.a_min) throw ConfigError("need 0 < a_min <= a_max");
  std::vector<double> out;
  std::int64_t previous = -1;
  for (double a = o.a_max; a >= o.a_min * (1.0 - 1e-12); a *= o.ratio) {
    const auto steps = std::max<std::int64_t>(1, std::llround(a / h));
    if (steps != previous) out.push_back(static_cast<double>(steps) * h);
    previous = steps;
  }
  return out;
}

CounterexampleReport counterexample_run(const std::vector<int>& depths, const Exponent& q,
                                        const CounterexampleOptions& options) {
  if (depths.empty()) throw ConfigError("no depths given");
  const ExponentPair pq{Exponent::infinity(), q};
  CounterexampleReport report;
  double min_norm = std::numeric_limits<double>::infinity();
  double max_contrast = 0.0;
  for (int k : depths) {
    if (k < 1) throw ConfigError("fat Cantor depth must be >= 1");
    const double finest_gap = std::pow(4.0, -k);
    const double h = options.spacing.value_or(finest_gap / 8.0);
    if (h > finest_gap / 4.0) {
      throw ResolutionError("grid spacing " + fmt(h) + " cannot resolve the depth-" + std::to_string(k) + " gaps",
                            finest_gap / 4.0);
    }
    const Grid grid(1, h, options.half_extent);
    const GridFunction g = sample_window(WindowSpec::fat_cantor(k), grid);
    const GridFunction contrast = sample_window(WindowSpec::indicator(1.0), grid);
    // chi_[0,1], closed on the right.
    std::vector<cplx> f0_values(grid.size());
    const std::int64_t m = grid.samples_per_unit();
    for (std::size_t i = 0; i < f0_values.size(); ++i) {
      const auto j = grid.domain().at(i)[0];
      if (j >= 0 && j <= m) f0_values[i] = 1.0;
    }
    const GridFunction f0(grid, std::move(f0_values));

    auto deviation = [&](const GridFunction& window, double a) {
      const CellFunction ga = g_a(GaborSystem::self_dual(window, a, 1.0));
      std::vector<cplx> v(grid.size());
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (f0[i] != cplx{}) v[i] = (ga.at(grid.domain().at(i)) - 1.0) * f0[i];
      }
      return amalgam_norm(GridFunction(grid, std::move(v)), pq);
    };

    const auto trial = geometric_a_range(options, grid.spacing());
    CounterexampleRow row;
    row.depth = k;
    row.h = grid.spacing();
    row.measure = fat_cantor_measure(k);
    row.norm = -1.0;
    for (double a : trial) {
      const double n = deviation(g, a);
      if (n >= row.norm) {  // trials decrease, so ties go to the smaller a
        row.norm = n;
        row.a = a;
      }
      if (n >= 1.0 - 2.0 * row.h) row.finest_a = a;
    }
    row.contrast_a = trial.back();
    row.contrast_norm = deviation(contrast, row.contrast_a);
    row.witness_ok = row.norm >= 1.0 - 2.0 * row.h;
    min_norm = std::min(min_norm, row.norm);
    max_contrast = std::max(max_contrast, row.contrast_norm);
    report.rows.push_back(row);
  }
  report.all_witnessed = std::all_of(report.rows.begin(), report.rows.end(),
                                     [](const CounterexampleRow& r) { return r.witness_ok; });
  report.separation = max_contrast == 0.0 ? std::numeric_limits<double>::infinity() : min_norm / max_contrast;
  report.separated = report.separation >= 10.0;
  return report;
}

MultiplierReport multiplier_sweep(const WindowSpec& g_spec, const WindowSpec& gamma_spec, const WindowSpec& f_spec,
                            const Exponent& p, const GridSpec& grid_spec, const std::vector<double>& a_list) {
  const Grid grid = grid_spec.make();
  const GridFunction g = sample_window(g_spec, grid);
  const GridFunction gamma = sample_window(gamma_spec, grid);
  const GridFunction f = sample_window(f_spec, grid);
  MultiplierReport report;
  report.f_norm = lp_norm(f, p);
  std::vector<double> norms;
  for (double a : a_list) {
    const CellFunction ga = g_a(GaborSystem(g, gamma, a, 1.0));
    std::vector<cplx> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (f[i] != cplx{}) v[i] = (ga.at(grid.domain().at(i)) - 1.0) * f[i];
    }
    const GridFunction prod(grid, std::move(v));
    report.points.push_back({a, lp_norm(prod, p), amalgam_norm(prod, {p, p})});
    norms.push_back(report.points.back().norm);
  }
  report.trend_ratio = trend_ratio(norms);
  return report;
}

GridFunction random_function(const Grid& grid, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t d = grid.dimension();
  std::vector<cplx> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const Index j = grid.domain().at(i);
    bool inside = true;
    for (std::size_t ax = 0; ax < d; ++ax) {
      const double x = grid.position(j[ax]);
      inside = inside && x >= -radius && x < radius;
    }
    // Draw for every sample so the stream does not depend on the radius.
    const double re = normal(rng);
    const double im = normal(rng);
    if (inside) values[i] = cplx(re, im);
  }
  return GridFunction(grid, std::move(values));
}

MonteCarloBound norm_bound_monte_carlo(const GaborSystem& sys, const ExponentPair& pq, int trials, double radius,
                                   std::uint64_t seed) {
  if (trials < 1) throw ConfigError("need at least one Monte-Carlo trial");
  MonteCarloBound out;
  out.bound = operator_norm_upper_bound(sys, pq);
  out.trials = trials;
  const CorrelationFamily family(sys);
  for (int i = 0; i < trials; ++i) {
    const GridFunction f = random_function(sys.grid(), radius, seed + static_cast<std::uint64_t>(i));
    const double ratio = amalgam_norm(walnut_apply(f, sys, family), pq) / amalgam_norm(f, pq);
    out.max_ratio = std::max(out.max_ratio, ratio);
    if (ratio > out.bound) ++out.violations;
  }
  return out;
}

void write_csv(std::ostream& out, const SweepReport& report) {
  out << "a,b,err_f,f_norm,g_a_dev,tail,norm_bound,opnorm_upper,opnorm_lower,dual_pairing,boundary_residue,bound_ok\n";
  for (const auto& r : report.records) {
    out << fmt(r.a) << ',' << fmt(r.b) << ',' << fmt(r.err_f) << ',' << fmt(r.f_norm) << ',' << fmt(r.g_a_dev)
        << ',' << fmt(r.tail) << ',' << fmt(r.norm_bound) << ',' << fmt(r.opnorm_upper) << ',' << fmt(r.opnorm_lower)
        << ',' << fmt(r.dual_pairing) << ',' << fmt(r.boundary_residue) << ',' << (r.bound_ok ? 1 : 0) << '\n';
  }
}

void write_csv(std::ostream& out, const CounterexampleReport& report) {
  out << "depth,h,measure,a,norm,finest_a,contrast_a,contrast_norm,witness_ok\n";
  for (const auto& r : report.rows) {
    out << r.depth << ',' << fmt(r.h) << ',' << fmt(r.measure) << ',' << fmt(r.a) << ',' << fmt(r.norm) << ','
        << fmt(r.finest_a) << ',' << fmt(r.contrast_a) << ',' << fmt(r.contrast_norm) << ',' << (r.witness_ok ? 1 : 0) << '\n';
  }
}

void to_json(nlohmann::json& j, const GridSpec& spec) {
  j = nlohmann::json{{"dimension", spec.dimension}, {"spacing", spec.spacing}, {"half_extent", spec.half_extent}};
}

void from_json(const nlohmann::json& j, GridSpec& spec) {
  try {
    spec = GridSpec{};
    spec.dimension = j.value("dimension", spec.dimension);
    spec.spacing = j.value("spacing", spec.spacing);
    spec.half_extent = j.value("half_extent", spec.half_extent);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed grid spec: ") + e.what());
  }
}

void to_json(nlohmann::json& j, const SweepSchedule& s) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [a, b] : s.pairs) pairs.push_back({a, b});
  j = nlohmann::json{{"grid", s.grid},
                     {"pairs", pairs},
                     {"g", s.g},
                     {"f", s.f},
                     {"p", exponent_to_json(s.pq.p)},
                     {"q", exponent_to_json(s.pq.q)}};
  if (s.gamma) j["gamma"] = *s.gamma;
}

void from_json(const nlohmann::json& j, SweepSchedule& s) {
  if (!j.is_object()) throw ConfigError("sweep schedule must be a JSON object");
  s = SweepSchedule{};
  try {
    if (j.contains("grid")) s.grid = j.at("grid").get<GridSpec>();
    if (j.contains("pairs")) {
      for (const auto& p : j.at("pairs")) s.pairs.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    } else if (j.contains("schedule")) {
      const auto kind = j.at("schedule").get<std::string>();
      const auto range = j.at("j").get<std::vector<int>>();
      if (range.size() != 2) throw ConfigError("\"j\" must be [first, last]");
      if (kind == "dyadic") {
        s.pairs = SweepSchedule::dyadic(range[0], range[1]);
      } else if (kind == "anisotropic") {
        s.pairs = SweepSchedule::anisotropic(range[0], range[1]);
      } else {
        throw ConfigError("unknown schedule \"" + kind + "\"");
      }
    }
    if (j.contains("g")) s.g = j.at("g").get<WindowSpec>();
    if (j.contains("gamma")) s.gamma = j.at("gamma").get<WindowSpec>();
    if (j.contains("f")) s.f = j.at("f").get<WindowSpec>();
    if (j.contains("p")) s.pq.p = exponent_from_json(j.at("p"));
    if (j.contains("q")) s.pq.q = exponent_from_json(j.at("q"));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed sweep schedule: ") + e.what());
  }
}

}  // namespace gabor
