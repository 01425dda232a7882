// Acceptance run: one PASS/FAIL line per criterion, tolerances fixed below.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gabor/amalgam.hpp"
#include "gabor/errors.hpp"
#include "gabor/experiments.hpp"
#include "gabor/frame.hpp"
#include "gabor/janssen.hpp"
#include "gabor/parallel.hpp"
#include "gabor/walnut.hpp"
#include "gabor/window.hpp"

using namespace gabor;

namespace {

constexpr double kAgreeDirectWalnut = 1e-10;
constexpr double kAgreeJanssen = 1e-6;
constexpr double kRandomSystemsSeconds = 120.0;
constexpr double kExactIdentity = 1e-12;
constexpr double kTrend = 0.2;
constexpr double kNormBoundIndicator = 8.0;
constexpr int kMonteCarloTrials = 100;
constexpr double kMemberReconstruction = 1e-8;
constexpr int kJanssenFrequencies = 16;
constexpr double kJanssenIdentity = 1e-10;
constexpr double kWitnessOffdiag = 0.1;
constexpr double kSeparation = 10.0;
constexpr double kCounterexampleSeconds = 300.0;
constexpr double kDecomposition = 1e-12;
constexpr double kThreadAgreement = 1e-12;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel_l2(const GridFunction& x, const GridFunction& y) {
  const double d = l2_norm(y);
  return d == 0.0 ? l2_norm(x) : l2_norm(x - y) / d;
}

std::vector<WindowSpec> library_windows() {
  return {WindowSpec::indicator(1.0), WindowSpec::bspline(2), WindowSpec::bspline(3), WindowSpec::bspline(4),
          WindowSpec::gaussian(1.0, 3.0), WindowSpec::fat_cantor(2)};
}

Outcome random_systems() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240611);
  const Grid grid(1, 1.0 / 16.0, 6.0);
  const std::vector<WindowSpec> families = {WindowSpec::indicator(1.0), WindowSpec::bspline(2),
                                            WindowSpec::bspline(3), WindowSpec::gaussian(0.8, 2.5)};
  const double steps[] = {0.5, 0.25, 0.125};
  std::uniform_int_distribution<std::size_t> pick_w(0, families.size() - 1);
  std::uniform_int_distribution<int> pick_s(0, 2);
  double worst_dw = 0.0, worst_jw = 0.0;
  int systems = 0, gaussian_systems = 0;
  while (systems < 10) {
    const std::size_t wi = pick_w(rng), yi = pick_w(rng);
    const auto g = sample_window(families[wi], grid);
    const auto gamma = sample_window(families[yi], grid);
    const double a = steps[pick_s(rng)], b = steps[pick_s(rng)];
    if (std::abs(inner_product(gamma, g)) < 1e-3) continue;
    const GaborSystem sys(g, gamma, a, b);
    const auto f = random_function(grid, 1.5, rng());
    const auto w = walnut_apply(f, sys);
    worst_dw = std::max(worst_dw, rel_l2(apply_frame_direct(f, sys), w));
    if (wi == 3 && yi == 3) {
      worst_jw = std::max(worst_jw, rel_l2(janssen_apply(f, janssen_coefficients(sys, 8, 8)), w));
      ++gaussian_systems;
    }
    ++systems;
  }
  // Always include at least one gaussian pair in the Janssen comparison.
  {
    const auto g = sample_window(families[3], grid);
    const GaborSystem sys = GaborSystem::self_dual(g, 0.5, 0.5);
    const auto f = random_function(grid, 1.5, 77);
    worst_jw = std::max(worst_jw, rel_l2(janssen_apply(f, janssen_coefficients(sys, 8, 8)), walnut_apply(f, sys)));
    ++gaussian_systems;
  }
  const double t = seconds_since(t0);
  return {worst_dw <= kAgreeDirectWalnut && worst_jw <= kAgreeJanssen && t <= kRandomSystemsSeconds,
          "direct/walnut " + fmt("%.2e", worst_dw) + " janssen/walnut " + fmt("%.2e", worst_jw) + " over " +
              std::to_string(gaussian_systems) + " gaussian pairs, " + fmt("%.2f", t) + "s"};
}

Outcome exact_identity() {
  const Grid grid(1, 1.0 / 32.0, 6.0);
  const auto chi = sample_window(WindowSpec::indicator(1.0), grid);
  const auto f = sample_window(WindowSpec::bspline(3).shifted({-1.0}), grid);
  const std::vector<ExponentPair> pqs = {{Exponent(1.0), Exponent(1.0)},
                                         {Exponent(2.0), Exponent(2.0)},
                                         {Exponent(1.0), Exponent::infinity()},
                                         {Exponent::infinity(), Exponent(2.0)}};
  double worst = 0.0;
  for (int m : {2, 4, 8}) {
    for (double b : {1.0, 0.5, 0.25}) {
      const auto sys = GaborSystem::self_dual(chi, 1.0 / m, b);
      const auto err = walnut_apply(f, sys) - f;
      for (const auto& pq : pqs) worst = std::max(worst, amalgam_norm(err, pq) / amalgam_norm(f, pq));
    }
  }
  return {worst <= kExactIdentity, "max relative error " + fmt("%.2e", worst)};
}

Outcome convergence_trend() {
  SweepSchedule s;
  s.grid = {1, 1.0 / 64.0, 8.0};
  s.g = WindowSpec::bspline(3);
  s.f = WindowSpec::gaussian(1.0, 3.0);
  s.pairs = SweepSchedule::dyadic(1, 5);
  bool ok = true;
  double worst = 0.0;
  for (const auto& pq : {ExponentPair{Exponent(1.0), Exponent(2.0)}, ExponentPair{Exponent(2.0), Exponent(2.0)},
                         ExponentPair{Exponent(2.0), Exponent::infinity()}}) {
    s.pq = pq;
    const auto r = convergence_sweep(s);
    ok = ok && r.passed && r.strictly_decreasing && r.trend_ratio < kTrend;
    worst = std::max(worst, r.trend_ratio);
  }
  return {ok, "worst trend ratio " + fmt("%.2e", worst)};
}

Outcome norm_bound() {
  const Grid grid(1, 1.0 / 16.0, 4.0);
  const auto chi = sample_window(WindowSpec::indicator(1.0), grid);
  const double bound = operator_norm_upper_bound(GaborSystem::self_dual(chi, 1.0, 1.0), {Exponent(2.0), Exponent(2.0)});
  int violations = 0;
  double worst_ratio = 0.0;
  std::uint64_t seed = 1000;
  const std::vector<std::pair<WindowSpec, std::pair<double, double>>> systems = {
      {WindowSpec::indicator(1.0), {1.0, 1.0}},
      {WindowSpec::bspline(2), {0.5, 0.5}},
      {WindowSpec::bspline(3), {0.25, 0.5}},
      {WindowSpec::gaussian(1.0, 2.5), {0.5, 0.25}}};
  const std::vector<ExponentPair> pqs = {{Exponent(1.0), Exponent(1.0)},
                                         {Exponent(2.0), Exponent(1.0)},
                                         {Exponent::infinity(), Exponent(2.0)}};
  for (const auto& [spec, ab] : systems) {
    const auto sys = GaborSystem::self_dual(sample_window(spec, grid), ab.first, ab.second);
    for (const auto& pq : pqs) {
      const auto mc = norm_bound_monte_carlo(sys, pq, kMonteCarloTrials, 1.5, seed);
      seed += kMonteCarloTrials;
      violations += mc.violations;
      worst_ratio = std::max(worst_ratio, mc.max_ratio / mc.bound);
    }
  }
  return {bound == kNormBoundIndicator && violations == 0,
          "indicator bound " + fmt("%.17g", bound) + ", " + std::to_string(violations) +
              " violations, max ratio/bound " + fmt("%.3f", worst_ratio)};
}

Outcome translate_sums() {
  const Grid grid(1, 1.0 / 32.0, 6.0);
  bool ok = true;
  double worst = 0.0;
  for (const auto& spec : library_windows()) {
    const auto g = sample_window(spec, grid);
    for (double a : {1.0, 0.5, 0.25}) {
      const auto s = sum_translates(g, a);
      bool every = s.holds;
      for (const auto& v : s.sum.values) every = every && std::abs(v) <= s.bound;
      ok = ok && every;
      worst = std::max(worst, s.max / s.bound);
    }
  }
  return {ok, "max sum/bound " + fmt("%.3f", worst)};
}

Outcome correlation_tail() {
  const Grid grid(1, 1.0 / 32.0, 8.0);
  bool within = true;
  for (const auto& spec : library_windows()) {
    const auto g = sample_window(spec, grid);
    for (double ab : {1.0, 0.5, 0.25}) within = within && tail_sum(GaborSystem::self_dual(g, ab, ab)).within_bound;
  }
  SweepSchedule s;
  s.grid = {1, 1.0 / 32.0, 8.0};
  s.g = WindowSpec::gaussian(1.0, 4.0);
  s.pairs = SweepSchedule::dyadic(1, 4);
  const auto r = opnorm_sweep(s);
  std::vector<double> tails;
  for (const auto& rec : r.records) tails.push_back(rec.tail);
  const double ratio = trend_ratio(tails);
  return {within && ratio < kTrend, std::string("within bound ") + (within ? "yes" : "no") + ", tail ratio " +
                                         fmt("%.2e", ratio)};
}

Outcome member_reconstruction() {
  const Grid grid(1, 1.0 / 128.0, 12.0);
  const auto g = sample_window(WindowSpec::gaussian(1.0, 8.0), grid);
  const auto sys = GaborSystem::self_dual(g, 0.5, 0.5);
  const CorrelationFamily family(sys);
  const auto& members = family.members();
  const int n_max = static_cast<int>(std::max(-members.lo()[0], members.hi()[0]));
  const auto lat = janssen_coefficients(sys, kJanssenFrequencies, n_max);
  double worst = 0.0;
  for (std::int64_t n = members.lo()[0]; n <= members.hi()[0]; ++n) {
    const auto rebuilt = fourier_reconstruct_G(lat, Index{n});
    const auto& direct = family.member(Index{n});
    for (std::size_t i = 0; i < direct.values.size(); ++i) {
      worst = std::max(worst, std::abs(rebuilt.values[i] - direct.values[i]));
    }
  }
  const bool clipped = lat.l_range.size() < static_cast<std::size_t>(2 * kJanssenFrequencies + 1);
  return {!clipped && worst <= kMemberReconstruction,
          std::to_string(members.size()) + " members, max error " + fmt("%.2e", worst)};
}

Outcome wexler_raz() {
  const Grid grid(1, 1.0 / 16.0, 4.0);
  const auto chi = sample_window(WindowSpec::indicator(1.0), grid);
  const auto unit = GaborSystem::self_dual(chi, 1.0, 1.0);
  const auto r1 = wexler_raz_check(unit, 4, 4);
  const auto f = random_function(grid, 2.0, 5);
  const double reproduce = rel_l2(janssen_apply(f, janssen_coefficients(unit, 8, 8)), f);
  const auto r2 = wexler_raz_check(GaborSystem::self_dual(chi, 0.5, 0.5), 4, 4);
  const bool witness = !r2.is_biorthogonal && r2.max_offdiag >= kWitnessOffdiag;
  return {r1.is_biorthogonal && reproduce <= kJanssenIdentity && witness,
          std::string("a=b=1 biorthogonal ") + (r1.is_biorthogonal ? "yes" : "no") + ", reproduction " +
              fmt("%.2e", reproduce) + ", a=b=1/2 max offdiag " + fmt("%.2e", r2.max_offdiag) + " (needs >= " +
              fmt("%.1f", kWitnessOffdiag) + ")"};
}

Outcome counterexample() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = counterexample_run({1, 2, 3}, Exponent::infinity());
  const double t = seconds_since(t0);
  return {r.all_witnessed && r.separation >= kSeparation && t <= kCounterexampleSeconds,
          std::string("witnessed ") + (r.all_witnessed ? "yes" : "no") + ", separation " +
              fmt("%.3g", r.separation) + ", " + fmt("%.2f", t) + "s"};
}

Outcome decomposition() {
  const Grid grid(1, 1.0 / 32.0, 8.0);
  const auto f = sample_window(WindowSpec::gaussian(0.8, 2.0), grid);
  const ExponentPair pq{Exponent(1.0), Exponent(2.0)};
  double worst_split = 0.0;
  bool bounded = true;
  for (const auto& spec : {WindowSpec::bspline(2), WindowSpec::bspline(3), WindowSpec::gaussian(1.0, 3.0)}) {
    const auto g = sample_window(spec, grid);
    for (double a : {0.5, 0.25}) {
      for (double b : {0.5, 0.25}) {
        const auto sys = GaborSystem::self_dual(g, a, b);
        const auto Rf = apply_R(f, sys);
        const auto lhs = walnut_apply(f, sys) - f;
        worst_split = std::max(worst_split, amalgam_norm(lhs - (apply_T(f, sys) + Rf), pq) / amalgam_norm(f, pq));
        const double rbound = tail_sum(sys).tail / std::abs(sys.normalization()) * amalgam_norm(f, pq);
        bounded = bounded && amalgam_norm(Rf, pq) <= rbound * (1 + 1e-12) + 1e-300;
      }
    }
  }
  return {worst_split <= kDecomposition && bounded,
          "split error " + fmt("%.2e", worst_split) + ", remainder bound " + (bounded ? "holds" : "violated")};
}

Outcome thread_independence() {
  auto snapshot = [] {
    std::vector<double> v;
    SweepSchedule s;
    s.grid = {1, 1.0 / 64.0, 8.0};
    s.g = WindowSpec::bspline(3);
    s.pq = {Exponent(1.0), Exponent(2.0)};
    s.pairs = SweepSchedule::dyadic(1, 4);
    for (const auto& rec : convergence_sweep(s).records) {
      v.push_back(rec.err_f);
      v.push_back(rec.tail);
    }
    const Grid grid(1, 1.0 / 32.0, 6.0);
    const auto g = sample_window(WindowSpec::gaussian(1.0, 3.0), grid);
    const auto sys = GaborSystem::self_dual(g, 0.5, 0.5);
    const auto f = random_function(grid, 2.0, 11);
    const auto sf = apply_frame_direct(f, sys);
    for (const auto& x : sf.values()) v.push_back(std::abs(x));
    for (const auto& x : janssen_coefficients(sys, 8, 8).entries) v.push_back(std::abs(x));
    return v;
  };
  set_thread_count(1);
  const auto one = snapshot();
  set_thread_count(8);
  const auto eight = snapshot();
  set_thread_count(0);
  double worst = 0.0;
  for (std::size_t i = 0; i < one.size(); ++i) {
    worst = std::max(worst, std::abs(one[i] - eight[i]) / std::max(1.0, std::abs(one[i])));
  }
  return {one.size() == eight.size() && worst <= kThreadAgreement, "max difference " + fmt("%.2e", worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"C1 random systems: direct, walnut and janssen agree", random_systems},
      {"C2 exact identity for partition windows", exact_identity},
      {"C3 convergence trend under lattice refinement", convergence_trend},
      {"C4 operator norm bound (exact value, Monte Carlo)", norm_bound},
      {"C5 translate sums bounded pointwise", translate_sums},
      {"C6 correlation sums bounded, tail decays", correlation_tail},
      {"C7 correlation members from janssen coefficients", member_reconstruction},
      {"C8 biorthogonality check and non-biorthogonal witness", wexler_raz},
      {"C9 fat Cantor counterexample separation", counterexample},
      {"C10 T + R decomposition and remainder bound", decomposition},
      {"C11 results independent of thread count", thread_independence},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
