#include "gabor/window.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <nlohmann/json.hpp>

#include "gabor/errors.hpp"

namespace gabor {

WindowSpec WindowSpec::indicator(double side) {
  WindowSpec s;
  s.family = WindowFamily::IndicatorCube;
  s.side = side;
  return s;
}

WindowSpec WindowSpec::bspline(int order) {
  WindowSpec s;
  s.family = WindowFamily::BSpline;
  s.order = order;
  return s;
}

WindowSpec WindowSpec::gaussian(double sigma, double radius) {
  WindowSpec s;
  s.family = WindowFamily::Gaussian;
  s.sigma = sigma;
  s.radius = radius;
  return s;
}

WindowSpec WindowSpec::fat_cantor(int depth) {
  WindowSpec s;
  s.family = WindowFamily::FatCantor;
  s.depth = depth;
  return s;
}

WindowSpec WindowSpec::shifted(Vec by) const {
  WindowSpec s = *this;
  s.shift = std::move(by);
  return s;
}

void WindowSpec::validate() const {
  switch (family) {
    case WindowFamily::IndicatorCube:
      if (!(side > 0.0)) throw ConfigError("indicator_cube: side must be positive");
      break;
    case WindowFamily::BSpline:
      if (order < 1) throw ConfigError("bspline: order must be >= 1");
      break;
    case WindowFamily::Gaussian:
      if (!(sigma > 0.0) || !(radius > 0.0)) {
        throw ConfigError("gaussian: sigma and radius must be positive");
      }
      break;
    case WindowFamily::FatCantor:
      if (depth < 1) throw ConfigError("fat_cantor: depth must be >= 1");
      break;
  }
}

double cardinal_bspline(int order, double x) {
  if (order < 1) throw ConfigError("bspline: order must be >= 1");
  if (x < 0.0 || x >= static_cast<double>(order)) return 0.0;
  // Cox-de Boor on integer knots: values of N_1..N_m at x - i for the relevant shifts.
  std::vector<double> n(static_cast<std::size_t>(order), 0.0);
  for (int i = 0; i < order; ++i) {
    const double y = x - i;
    n[static_cast<std::size_t>(i)] = (y >= 0.0 && y < 1.0) ? 1.0 : 0.0;
  }
  for (int k = 2; k <= order; ++k) {
    for (int i = 0; i + k <= order; ++i) {
      const double y = x - i;
      const auto ui = static_cast<std::size_t>(i);
      n[ui] = (y * n[ui] + (k - y) * n[ui + 1]) / (k - 1);
    }
  }
  return n[0];
}

std::vector<std::pair<double, double>> fat_cantor_intervals(int depth) {
  if (depth < 0) throw ConfigError("fat_cantor: depth must be >= 0");
  std::vector<std::pair<double, double>> pieces{{0.0, 1.0}};
  double gap = 1.0;
  for (int j = 1; j <= depth; ++j) {
    gap /= 4.0;
    std::vector<std::pair<double, double>> next;
    next.reserve(pieces.size() * 2);
    for (const auto& [l, r] : pieces) {
      const double mid = 0.5 * (l + r);
      next.emplace_back(l, mid - 0.5 * gap);
      next.emplace_back(mid + 0.5 * gap, r);
    }
    pieces = std::move(next);
  }
  return pieces;
}

double fat_cantor_measure(int depth) {
  return 1.0 - 0.5 * (1.0 - std::ldexp(1.0, -depth));
}

namespace {

double profile_1d(const WindowSpec& spec, double x) {
  switch (spec.family) {
    case WindowFamily::IndicatorCube:
      return (x >= 0.0 && x < spec.side) ? 1.0 : 0.0;
    case WindowFamily::BSpline:
      return cardinal_bspline(spec.order, x);
    case WindowFamily::Gaussian:
      if (std::abs(x) > spec.radius) return 0.0;
      return std::exp(-std::numbers::pi * (x / spec.sigma) * (x / spec.sigma));
    case WindowFamily::FatCantor:
      break;
  }
  return 0.0;
}

}  // namespace

GridFunction sample_window(const WindowSpec& spec, const Grid& grid) {
  spec.validate();
  const std::size_t d = grid.dimension();
  if (!spec.shift.empty() && spec.shift.size() != d) {
    throw UnsupportedDimensionError("window shift dimension does not match the grid");
  }
  auto shift_of = [&](std::size_t ax) { return spec.shift.empty() ? 0.0 : spec.shift[ax]; };

  const auto& box = grid.domain();
  std::vector<cplx> values(grid.size());

  if (spec.family == WindowFamily::FatCantor) {
    if (d != 1) throw UnsupportedDimensionError("fat_cantor windows are defined for d = 1 only");
    const auto pieces = fat_cantor_intervals(spec.depth);
    const auto m = static_cast<double>(grid.samples_per_unit());
    for (std::size_t i = 0; i < values.size(); ++i) {
      // Work in units of h so interval endpoints compare exactly.
      const double u = static_cast<double>(box.at(i)[0]) - shift_of(0) * m;
      for (const auto& [l, r] : pieces) {
        if (u >= l * m && u < r * m) {
          values[i] = 1.0;
          break;
        }
      }
    }
    return GridFunction(grid, std::move(values));
  }

  for (std::size_t i = 0; i < values.size(); ++i) {
    const Index j = box.at(i);
    double v = 1.0;
    for (std::size_t ax = 0; ax < d && v != 0.0; ++ax) {
      v *= profile_1d(spec, grid.position(j[ax]) - shift_of(ax));
    }
    values[i] = v;
  }
  return GridFunction(grid, std::move(values));
}

// ---------------------------------------------------------------------------
// JSON

namespace {

const char* family_name(WindowFamily f) {
  switch (f) {
    case WindowFamily::IndicatorCube: return "indicator_cube";
    case WindowFamily::BSpline: return "bspline";
    case WindowFamily::Gaussian: return "gaussian";
    case WindowFamily::FatCantor: return "fat_cantor";
  }
  return "unknown";
}

}  // namespace

void to_json(nlohmann::json& j, const WindowSpec& spec) {
  j = nlohmann::json{{"family", family_name(spec.family)}};
  switch (spec.family) {
    case WindowFamily::IndicatorCube: j["side"] = spec.side; break;
    case WindowFamily::BSpline: j["order"] = spec.order; break;
    case WindowFamily::Gaussian:
      j["sigma"] = spec.sigma;
      j["radius"] = spec.radius;
      break;
    case WindowFamily::FatCantor: j["depth"] = spec.depth; break;
  }
  if (!spec.shift.empty()) j["shift"] = spec.shift;
}

void from_json(const nlohmann::json& j, WindowSpec& spec) {
  if (!j.is_object() || !j.contains("family")) {
    throw ConfigError("window spec must be an object with a \"family\" field");
  }
  const auto family = j.at("family").get<std::string>();
  spec = WindowSpec{};
  try {
    if (family == "indicator_cube" || family == "indicator") {
      spec.family = WindowFamily::IndicatorCube;
      spec.side = j.value("side", 1.0);
    } else if (family == "bspline") {
      spec.family = WindowFamily::BSpline;
      spec.order = j.value("order", 2);
    } else if (family == "gaussian") {
      spec.family = WindowFamily::Gaussian;
      spec.sigma = j.value("sigma", 1.0);
      spec.radius = j.value("radius", 6.0);
    } else if (family == "fat_cantor") {
      spec.family = WindowFamily::FatCantor;
      spec.depth = j.value("depth", 1);
    } else {
      throw ConfigError("unknown window family \"" + family + "\"");
    }
    if (j.contains("shift")) {
      const auto& s = j.at("shift");
      spec.shift = s.is_array() ? s.get<Vec>() : Vec{s.get<double>()};
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed window spec: ") + e.what());
  }
  spec.validate();
}

}  // namespace gabor
