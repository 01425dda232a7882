#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gabor/amalgam.hpp"
#include "gabor/errors.hpp"
#include "gabor/experiments.hpp"
#include "gabor/parallel.hpp"

using namespace gabor;

namespace {

struct ThreadReset {
  ~ThreadReset() { set_thread_count(0); }
};

SweepSchedule hat_schedule() {
  SweepSchedule s;
  s.grid = {1, 1.0 / 64.0, 8.0};
  s.pairs = SweepSchedule::dyadic(1, 5);
  s.g = WindowSpec::bspline(2);
  s.f = WindowSpec::gaussian(1.0, 3.0);
  s.pq = {Exponent(1.0), Exponent(2.0)};
  return s;
}

}  // namespace

TEST(Trend, RatioAndMonotonicity) {
  EXPECT_EQ(trend_ratio({}), 0.0);
  EXPECT_EQ(trend_ratio({0.0, 0.0}), 0.0);
  EXPECT_TRUE(std::isinf(trend_ratio({0.0, 1.0})));
  EXPECT_DOUBLE_EQ(trend_ratio({4.0, 2.0, 1.0}), 0.25);
  EXPECT_TRUE(strictly_decreasing({3.0, 2.0, 1.0}));
  EXPECT_FALSE(strictly_decreasing({3.0, 3.0, 1.0}));
}

TEST(Schedule, GeneratorsAndValidation) {
  const auto d = SweepSchedule::dyadic(1, 3);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d[2], std::make_pair(0.125, 0.125));
  const auto an = SweepSchedule::anisotropic(0, 2);
  EXPECT_DOUBLE_EQ(an[2].second, 1.0 / 9.0);

  SweepSchedule s;
  s.pairs = {{0.5, 0.5}, {0.5, 0.25}};
  EXPECT_THROW(s.validate(), ConfigError);
  s.pairs = {{0.5, 0.5}, {0.3, 0.25}};
  EXPECT_THROW(s.validate(), CommensurabilityError);
  s.pairs = {{1.0 / 3.0, 0.5}};
  EXPECT_THROW(s.validate(), CommensurabilityError);
  s.pairs = SweepSchedule::anisotropic(1, 4);
  EXPECT_NO_THROW(s.validate());
}

TEST(ConvergenceSweep, ExactRegimeHasZeroError) {
  SweepSchedule s;
  s.grid = {1, 1.0 / 32.0, 6.0};
  s.g = WindowSpec::indicator(1.0);
  s.f = WindowSpec::bspline(3).shifted({-1.0});
  s.pairs = {{0.5, 1.0}, {0.25, 0.5}, {0.125, 0.25}};
  for (const auto& pq : {ExponentPair{Exponent(1.0), Exponent(1.0)}, ExponentPair{Exponent(2.0), Exponent::infinity()}}) {
    s.pq = pq;
    const auto r = convergence_sweep(s);
    for (const auto& rec : r.records) {
      EXPECT_LT(rec.err_f, 1e-13 * rec.f_norm);
      EXPECT_TRUE(rec.bound_ok);
      EXPECT_EQ(rec.boundary_residue, 0.0);
    }
  }
}

TEST(ConvergenceSweep, HatWindowErrorShrinks) {
  const auto r = convergence_sweep(hat_schedule());
  ASSERT_EQ(r.records.size(), 5u);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.strictly_decreasing);
  EXPECT_LT(r.trend_ratio, 0.2);
  EXPECT_LT(r.records.back().err_f / r.records.back().f_norm, 0.02);
  for (const auto& rec : r.records) {
    EXPECT_TRUE(rec.bound_ok);
    EXPECT_LE(rec.opnorm_lower, rec.opnorm_upper);
    EXPECT_LE(rec.opnorm_upper * rec.f_norm, rec.norm_bound * rec.f_norm);
  }
}

TEST(ConvergenceSweep, RejectsFunctionsThatReachTheBoundary) {
  SweepSchedule s;
  s.grid = {1, 1.0 / 16.0, 2.0};
  s.g = WindowSpec::bspline(2);
  s.f = WindowSpec::gaussian(1.0, 3.0);
  s.pairs = {{0.5, 1.0}};
  EXPECT_THROW(convergence_sweep(s), BoundaryMarginError);
}

TEST(OpnormSweep, IndicatorAndGaussian) {
  SweepSchedule s;
  s.grid = {1, 1.0 / 64.0, 8.0};
  s.g = WindowSpec::indicator(1.0);
  s.pairs = SweepSchedule::dyadic(1, 4);
  for (const auto& rec : opnorm_sweep(s).records) EXPECT_LT(rec.g_a_dev, 1e-14);

  s.g = WindowSpec::gaussian(1.0, 4.0);
  const auto r = opnorm_sweep(s);
  EXPECT_LT(r.records.back().g_a_dev, 1e-3);
  EXPECT_TRUE(r.strictly_decreasing);
  for (std::size_t i = 1; i < r.records.size(); ++i) EXPECT_LT(r.records[i].tail, r.records[i - 1].tail);
  for (const auto& rec : r.records) EXPECT_TRUE(rec.bound_ok);
}

TEST(Riemann, ExactForPartitionWindows) {
  const GridSpec grid{1, 1.0 / 64.0, 4.0};
  for (const auto& spec : {WindowSpec::indicator(1.0), WindowSpec::bspline(2)}) {
    for (const auto& pt : riemann_uniformity(spec, grid, {1.0, 0.5, 0.25, 0.125})) {
      EXPECT_LT(pt.deviation, 1e-13) << pt.a;
    }
  }
}

TEST(Riemann, IndicatorOfGenericSideHasOrderAError) {
  const GridSpec grid{1, 1.0 / 64.0, 4.0};
  const auto pts = riemann_uniformity(WindowSpec::indicator(45.0 / 64.0), grid, {0.5, 0.25, 0.125, 1.0 / 64.0});
  EXPECT_GT(pts.front().deviation, 0.1);
  for (const auto& pt : pts) EXPECT_LE(pt.deviation, pt.a + 1e-12);
  EXPECT_LT(pts.back().deviation, 1e-13);
}

TEST(Riemann, GaussianDeviationDecays) {
  const auto pts = riemann_uniformity(WindowSpec::gaussian(1.0, 6.0), {1, 1.0 / 32.0, 8.0}, {1.0, 0.5, 0.25});
  // Poisson summation: the error is about 2 exp(-pi / a^2) for this gaussian.
  EXPECT_NEAR(pts[0].deviation, 2.0 * std::exp(-std::numbers::pi), 1e-3);
  EXPECT_NEAR(pts[1].deviation, 2.0 * std::exp(-4.0 * std::numbers::pi), 1e-7);
  EXPECT_LT(pts[2].deviation, 1e-13);
}

TEST(Counterexample, WitnessesAndSeparation) {
  const auto r = counterexample_run({1, 2, 3}, Exponent::infinity());
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_TRUE(r.all_witnessed);
  EXPECT_TRUE(r.separated);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.h, std::pow(4.0, -row.depth) / 8.0);
    EXPECT_GE(row.norm, 1.0 - 2.0 * row.h);
    EXPECT_GT(row.finest_a, 0.0);
    EXPECT_LE(row.finest_a, row.a);
    EXPECT_LT(row.contrast_norm, 0.05);
    EXPECT_NEAR(row.measure, fat_cantor_measure(row.depth), 1e-12);
  }
}

TEST(Counterexample, RequiresFineEnoughGrid) {
  CounterexampleOptions o;
  o.spacing = 1.0 / 8.0;
  try {
    counterexample_run({2}, Exponent::infinity(), o);
    FAIL() << "expected ResolutionError";
  } catch (const ResolutionError& e) {
    EXPECT_DOUBLE_EQ(e.required_spacing(), 1.0 / 64.0);
  }
}

TEST(Counterexample, TrialRange) {
  CounterexampleOptions o;
  o.a_min = 0.25;
  o.ratio = 0.5;
  const auto r = geometric_a_range(o, 1.0 / 16.0);
  EXPECT_EQ(r, (std::vector<double>{1.0, 0.5, 0.25}));
}

TEST(MultiplierSweep, IndicatorVanishesAndSmoothWindowsConverge) {
  const GridSpec grid{1, 1.0 / 64.0, 8.0};
  const auto f = WindowSpec::gaussian(1.5, 4.0);
  const auto chi = WindowSpec::indicator(1.0);
  for (const auto& pt : multiplier_sweep(chi, chi, f, Exponent(1.0), grid, {1.0, 0.5, 0.25}).points) {
    EXPECT_LT(pt.norm, 1e-14);
  }
  const auto g = WindowSpec::gaussian(1.0, 4.0);
  const auto rg = multiplier_sweep(g, g, f, Exponent(1.0), grid, {1.0, 0.5, 0.25});
  EXPECT_LT(rg.points.back().norm, 1e-3 * rg.f_norm);
  const auto hat = WindowSpec::bspline(2);
  const auto rh = multiplier_sweep(hat, hat, f, Exponent(1.0), grid, {0.5, 0.25, 0.125, 0.0625});
  EXPECT_LT(rh.trend_ratio, 0.2);
  const auto r2 = multiplier_sweep(hat, hat, f, Exponent(2.0), grid, {0.5, 0.25});
  for (const auto& pt : r2.points) EXPECT_NEAR(pt.norm, pt.amalgam_norm, 1e-12 * pt.amalgam_norm);
}

TEST(MonteCarlo, RandomFunctionsAreSeededAndSupported) {
  const Grid g(1, 1.0 / 8.0, 4.0);
  const auto f1 = random_function(g, 1.0, 9);
  const auto f2 = random_function(g, 1.0, 9);
  const auto f3 = random_function(g, 1.0, 10);
  EXPECT_EQ(l2_norm(f1 - f2), 0.0);
  EXPECT_GT(l2_norm(f1 - f3), 0.0);
  EXPECT_EQ(f1.at(Index{8}), cplx{});
  EXPECT_EQ(f1.at(Index{-9}), cplx{});
  EXPECT_NE(f1.at(Index{-8}), cplx{});
}

TEST(Determinism, SweepsIndependentOfThreadCount) {
  ThreadReset reset;
  set_thread_count(1);
  const auto r1 = convergence_sweep(hat_schedule());
  set_thread_count(8);
  const auto r8 = convergence_sweep(hat_schedule());
  ASSERT_EQ(r1.records.size(), r8.records.size());
  for (std::size_t i = 0; i < r1.records.size(); ++i) {
    EXPECT_EQ(r1.records[i].err_f, r8.records[i].err_f);
    EXPECT_EQ(r1.records[i].tail, r8.records[i].tail);
  }
  std::ostringstream a, b;
  write_csv(a, r1);
  write_csv(b, r8);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')),
            "a,b,err_f,f_norm,g_a_dev,tail,norm_bound,opnorm_upper,opnorm_lower,dual_pairing,boundary_residue,"
            "bound_ok");
}

TEST(Json, ScheduleRoundTripAndErrors) {
  const auto s = hat_schedule();
  const nlohmann::json j = s;
  const auto back = j.get<SweepSchedule>();
  EXPECT_EQ(back.pairs, s.pairs);
  EXPECT_EQ(back.pq.p, s.pq.p);
  EXPECT_EQ(back.pq.q, s.pq.q);
  EXPECT_EQ(back.grid.spacing, s.grid.spacing);

  const auto named = nlohmann::json::parse(R"({"schedule": "anisotropic", "j": [1, 3], "q": "inf"})").get<SweepSchedule>();
  EXPECT_EQ(named.pairs, SweepSchedule::anisotropic(1, 3));
  EXPECT_TRUE(named.pq.q.is_infinite());
  EXPECT_THROW(nlohmann::json::parse(R"({"schedule": "linear", "j": [1, 3]})").get<SweepSchedule>(), ConfigError);
  EXPECT_THROW(nlohmann::json::parse(R"({"schedule": "dyadic", "j": [1]})").get<SweepSchedule>(), ConfigError);
  EXPECT_THROW(nlohmann::json::parse(R"({"pairs": [[0.5, 0.5]], "p": 0.5})").get<SweepSchedule>(), ConfigError);
}
