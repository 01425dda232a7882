#include "gabor/amalgam.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "gabor/errors.hpp"
#include "gabor/summation.hpp"

namespace gabor {

Exponent::Exponent(double value) : value_(value), infinite_(false) {
  if (std::isinf(value) && value > 0) {
    infinite_ = true;
    value_ = 0.0;
    return;
  }
  if (!(value >= 1.0)) throw ConfigError("exponent must lie in [1, inf]");
}

Exponent Exponent::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf" || text == "INF") return infinity();
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') throw ConfigError("cannot parse exponent \"" + text + "\"");
  return Exponent(v);
}

double Exponent::value() const {
  if (infinite_) throw RangeError("exponent is infinite");
  return value_;
}

std::string Exponent::to_string() const {
  if (infinite_) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value_);
  return buf;
}

Exponent conjugate_exponent(const Exponent& p) {
  if (p.is_infinite()) return Exponent(1.0);
  const double v = p.value();
  if (v == 1.0) return Exponent::infinity();
  return Exponent(v / (v - 1.0));
}

ExponentPair conjugate(const ExponentPair& pq) {
  return {conjugate_exponent(pq.p), conjugate_exponent(pq.q)};
}

namespace {

// Cube of side 1 in lattice units: j in [k*M, (k+1)*M) per axis.
IndexBox cube_box(const Grid& grid, const Index& cube) {
  const auto m = grid.samples_per_unit();
  Index lo{}, hi{};
  for (std::size_t ax = 0; ax < grid.dimension(); ++ax) {
    lo[ax] = cube[ax] * m;
    hi[ax] = (cube[ax] + 1) * m - 1;
  }
  return IndexBox(grid.dimension(), lo, hi).intersect(grid.domain());
}

double box_lp(const GridFunction& f, const IndexBox& box, const Exponent& p) {
  if (box.empty()) return 0.0;
  const auto& domain = f.grid().domain();
  if (p.is_infinite()) {
    double m = 0.0;
    for (std::size_t i = 0; i < box.size(); ++i) {
      m = std::max(m, std::abs(f[domain.flat(box.at(i))]));
    }
    return m;
  }
  const double pv = p.value();
  double scale = 0.0;
  for (std::size_t i = 0; i < box.size(); ++i) {
    scale = std::max(scale, std::abs(f[domain.flat(box.at(i))]));
  }
  if (scale == 0.0) return 0.0;
  const double s = pairwise_sum<double>(box.size(), [&](std::size_t i) {
    const double v = std::abs(f[domain.flat(box.at(i))]) / scale;
    return pv == 1.0 ? v : (pv == 2.0 ? v * v : std::pow(v, pv));
  });
  return scale * std::pow(s * f.grid().cell_volume(), 1.0 / pv);
}

IndexBox cube_range(const Grid& grid) {
  const auto m = grid.samples_per_unit();
  Index lo{}, hi{};
  for (std::size_t ax = 0; ax < grid.dimension(); ++ax) {
    lo[ax] = floor_div(grid.domain().lo()[ax], m);
    hi[ax] = floor_div(grid.domain().hi()[ax], m);
  }
  return IndexBox(grid.dimension(), lo, hi);
}

}  // namespace

double lp_norm_on_cube(const GridFunction& f, const Index& cube, const Exponent& p) {
  return box_lp(f, cube_box(f.grid(), cube), p);
}

std::vector<std::pair<Index, double>> cube_norms(const GridFunction& f, const Exponent& p) {
  const auto cubes = cube_range(f.grid());
  std::vector<std::pair<Index, double>> out;
  out.reserve(cubes.size());
  for (std::size_t c = 0; c < cubes.size(); ++c) {
    const Index k = cubes.at(c);
    out.emplace_back(k, lp_norm_on_cube(f, k, p));
  }
  return out;
}

double lp_norm(const GridFunction& f, const Exponent& p) { return box_lp(f, f.grid().domain(), p); }

double sequence_norm(const std::vector<double>& values, const Exponent& q) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  if (q.is_infinite() || m == 0.0) return m;
  const double qv = q.value();
  const double s = pairwise_sum<double>(values.size(), [&](std::size_t i) {
    const double v = std::abs(values[i]) / m;
    return qv == 1.0 ? v : (qv == 2.0 ? v * v : std::pow(v, qv));
  });
  return m * std::pow(s, 1.0 / qv);
}

double amalgam_norm(const GridFunction& f, const ExponentPair& pq) {
  const auto norms = cube_norms(f, pq.p);
  std::vector<double> v;
  v.reserve(norms.size());
  for (const auto& [k, n] : norms) v.push_back(n);
  return sequence_norm(v, pq.q);
}

double wiener_norm(const GridFunction& g) {
  return amalgam_norm(g, {Exponent::infinity(), Exponent(1.0)});
}

cplx pairing(const GridFunction& f, const GridFunction& g) { return inner_product(f, g); }

HolderCheck holder_check(const GridFunction& f, const GridFunction& g, const ExponentPair& pq) {
  HolderCheck c{};
  c.pairing = pairing(f, g);
  c.lhs = std::abs(c.pairing);
  c.rhs = amalgam_norm(f, pq) * amalgam_norm(g, conjugate(pq));
  c.holds = c.lhs <= c.rhs * (1.0 + 1e-12) + std::numeric_limits<double>::min();
  return c;
}

}  // namespace gabor
