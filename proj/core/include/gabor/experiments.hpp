#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gabor/amalgam.hpp"
#include "gabor/frame.hpp"
#include "gabor/grid.hpp"
#include "gabor/window.hpp"

namespace gabor {

struct GridSpec {
  std::size_t dimension = 1;
  double spacing = 1.0 / 64.0;
  double half_extent = 8.0;

  Grid make() const { return Grid(dimension, spacing, half_extent); }
};

/// Ordered lattice parameters (a_j, b_j) together with everything needed to
/// evaluate one sweep point. gamma defaults to g.
struct SweepSchedule {
  GridSpec grid;
  std::vector<std::pair<double, double>> pairs;
  WindowSpec g = WindowSpec::bspline(2);
  std::optional<WindowSpec> gamma;
  WindowSpec f = WindowSpec::gaussian(1.0, 3.0);
  ExponentPair pq{Exponent(2.0), Exponent(2.0)};

  const WindowSpec& synthesis() const { return gamma ? *gamma : g; }

  /// Throws ConfigError unless a_j and b_j strictly decrease, and
  /// CommensurabilityError unless each a_j and 1/b_j is a multiple of h.
  void validate() const;

  /// a_j = b_j = 2^-j for j = first..last.
  static std::vector<std::pair<double, double>> dyadic(int first, int last);
  /// a_j = 2^-j, b_j = 3^-j.
  static std::vector<std::pair<double, double>> anisotropic(int first, int last);
};

struct SweepRecord {
  double a = 0.0;
  double b = 0.0;
  double err_f = 0.0;        ///< ||S f - f||_{W(L^p,l^q)}
  double f_norm = 0.0;       ///< ||f||_{W(L^p,l^q)}
  double g_a_dev = 0.0;      ///< ||G_a - 1||_inf
  double tail = 0.0;         ///< sum_{n != 0} a^d ||G_{a,b;n}||_inf
  double norm_bound = 0.0;   ///< operator_norm_upper_bound
  double opnorm_upper = 0.0; ///< g_a_dev + tail / |<gamma,g>|
  double opnorm_lower = 0.0; ///< max(0, g_a_dev - tail / |<gamma,g>|)
  double dual_pairing = 0.0; ///< |<S f - f, phi>| for the standard gaussian phi
  double boundary_residue = 0.0;
  bool bound_ok = false;     ///< err_f <= opnorm_upper * f_norm + boundary_residue
  double wall_time = 0.0;    ///< seconds; never written to the CSV
};

struct SweepReport {
  std::vector<SweepRecord> records;
  /// last / first of the tracked quantity (err_f, or opnorm_upper for opnorm
  /// sweeps); 0/0 counts as 0.
  double trend_ratio = 0.0;
  bool strictly_decreasing = false;
  /// Every record satisfies its bound and, for two or more points, trend_ratio < 0.2.
  bool passed = false;
};

/// last / first with 0/0 -> 0; 0 for an empty sequence.
double trend_ratio(const std::vector<double>& values);
bool strictly_decreasing(const std::vector<double>& values);

/// err_f via the Walnut form for every pair. Throws BoundaryMarginError when a
/// nonzero correlation member would translate part of f off the grid.
SweepReport convergence_sweep(const SweepSchedule& schedule);

/// g_a_dev, tail and the operator-norm proxies; f is not used.
SweepReport opnorm_sweep(const SweepSchedule& schedule);

struct RiemannPoint {
  double a = 0.0;
  double deviation = 0.0;  ///< max_y |a^d sum_n f(y + na) - h^d sum f|
};

std::vector<RiemannPoint> riemann_uniformity(const WindowSpec& f, const GridSpec& grid,
                                             const std::vector<double>& a_list);

struct CounterexampleOptions {
  /// Grid spacing per depth; default 4^-k / 8.
  std::optional<double> spacing;
  double a_max = 1.0;
  double a_min = 1.0 / 64.0;
  /// Geometric factor between successive trial values of a.
  double ratio = 0.9;
  double half_extent = 2.0;
};

struct CounterexampleRow {
  int depth = 0;
  double h = 0.0;
  double measure = 0.0;        ///< |E_k|
  double a = 0.0;              ///< witness a_k
  double norm = 0.0;           ///< ||(G_{a_k} - 1) chi_[0,1]||_{W(L^inf, l^q)}
  double finest_a = 0.0;       ///< smallest trial a whose norm is still >= 1 - 2h (0 if none)
  double contrast_a = 0.0;     ///< finest trial a
  double contrast_norm = 0.0;  ///< same quantity for g = gamma = chi_[0,1)
  bool witness_ok = false;     ///< norm >= 1 - 2h
};

struct CounterexampleReport {
  std::vector<CounterexampleRow> rows;
  bool all_witnessed = false;
  /// min norm / max contrast_norm (infinite when the contrast vanishes).
  double separation = 0.0;
  bool separated = false;  ///< separation >= 10
};

/// Trial values a_max, a_max*ratio, ... down to a_min, rounded to multiples of h
/// and deduplicated, in decreasing order.
std::vector<double> geometric_a_range(const CounterexampleOptions& options, double h);

/// Fat-Cantor windows g = gamma = chi_{E_k} against f_0 = chi_[0,1], d = 1.
/// Throws ResolutionError if h > 4^-k / 4.
CounterexampleReport counterexample_run(const std::vector<int>& depths, const Exponent& q,
                                        const CounterexampleOptions& options = {});

struct MultiplierPoint {
  double a = 0.0;
  double norm = 0.0;          ///< ||(G_a - 1) f||_p
  double amalgam_norm = 0.0;  ///< ||(G_a - 1) f||_{W(L^p,l^p)}
};

struct MultiplierReport {
  std::vector<MultiplierPoint> points;
  double trend_ratio = 0.0;
  double f_norm = 0.0;  ///< ||f||_p
};

/// b does not enter G_a; the system is built with b = 1.
MultiplierReport multiplier_sweep(const WindowSpec& g, const WindowSpec& gamma, const WindowSpec& f,
                            const Exponent& p, const GridSpec& grid, const std::vector<double>& a_list);

/// Complex samples with independent standard normal real and imaginary parts on
/// [-radius, radius)^d, zero elsewhere. Deterministic in `seed`.
GridFunction random_function(const Grid& grid, double radius, std::uint64_t seed);

struct MonteCarloBound {
  double bound = 0.0;      ///< operator_norm_upper_bound
  double max_ratio = 0.0;  ///< max ||S f|| / ||f|| over the trials
  int trials = 0;
  int violations = 0;      ///< trials with ratio > bound
};

/// Measures ||S f||_{W(L^p,l^q)} / ||f||_{W(L^p,l^q)} for random f (trial i uses
/// seed + i) and compares it with the norm bound.
MonteCarloBound norm_bound_monte_carlo(const GaborSystem& sys, const ExponentPair& pq, int trials, double radius,
                                   std::uint64_t seed);

/// Columns a,b,err_f,f_norm,g_a_dev,tail,norm_bound,opnorm_upper,opnorm_lower,
/// dual_pairing,boundary_residue,bound_ok at 17 significant digits.
void write_csv(std::ostream& out, const SweepReport& report);
void write_csv(std::ostream& out, const CounterexampleReport& report);

void to_json(nlohmann::json& j, const GridSpec& spec);
void from_json(const nlohmann::json& j, GridSpec& spec);
void to_json(nlohmann::json& j, const SweepSchedule& schedule);
/// Accepts explicit "pairs" or {"schedule": "dyadic"|"anisotropic", "j": [first, last]}.
void from_json(const nlohmann::json& j, SweepSchedule& schedule);

}  // namespace gabor
