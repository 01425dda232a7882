#pragma once

#include <cstdint>
#include <vector>

#include "gabor/amalgam.hpp"
#include "gabor/frame.hpp"
#include "gabor/grid.hpp"

namespace gabor {

/// An a-periodic function stored on the fundamental cell [0, a)^d.
///
/// `period` is a/h samples per axis; values are row-major over the cell.
/// Evaluation at any lattice point reduces its coordinates modulo the period.
struct CellFunction {
  std::size_t dimension = 1;
  std::int64_t period = 1;
  double spacing = 1.0;
  std::vector<cplx> values;

  IndexBox cell() const { return IndexBox::cube(dimension, 0, period - 1); }
  cplx at(const Index& x) const;
  /// Discrete essential sup: max over cell samples.
  double sup_norm() const;
};

/// G_{a,b;n}(x) = sum_k conj(g)(x - n/b - ak) gamma(x - ak) for every n whose
/// shifted supports can overlap: n/b in supp(gamma) - supp(g). Members outside
/// that range vanish identically.
class CorrelationFamily {
 public:
  explicit CorrelationFamily(const GaborSystem& sys);

  const IndexBox& members() const noexcept { return members_; }
  /// Throws RangeError outside members().
  const CellFunction& member(const Index& n) const;
  /// Zero for n outside members().
  cplx value(const Index& n, const Index& x) const;
  std::int64_t shift_step() const noexcept { return shift_step_; }

 private:
  IndexBox members_;
  std::int64_t shift_step_;
  std::vector<CellFunction> cells_;
};

/// Single member G_{a,b;n}; zero function if the supports cannot overlap.
CellFunction correlation_fn(const GaborSystem& sys, const Index& n);

/// G_a = a^d / <gamma,g> * G_{a,b;0}.
CellFunction g_a(const GaborSystem& sys);

/// (S f)(x) = 1/<gamma,g> sum_n a^d G_{a,b;n}(x) f(x - n/b).
GridFunction walnut_apply(const GridFunction& f, const GaborSystem& sys);
GridFunction walnut_apply(const GridFunction& f, const GaborSystem& sys,
                          const CorrelationFamily& family);

/// a^d / |<gamma,g>| (1 + 1/a)^d (2 + 2b)^d ||g||_W ||gamma||_W, evaluated in
/// extended precision. Independent of (p, q).
double operator_norm_upper_bound(const GaborSystem& sys, const ExponentPair& pq);

struct TranslateSum {
  CellFunction sum;  ///< x -> sum_n |g(x - an)|
  double max = 0.0;
  double bound = 0.0;  ///< (1 + 1/a)^d ||g||_W
  bool holds = false;
};

TranslateSum sum_translates(const GridFunction& g, double a);

struct TailSum {
  double tail = 0.0;        ///< sum_{n != 0} a^d ||G_{a,b;n}||_inf
  double full_sum = 0.0;    ///< sum_n ||G_{a,b;n}||_inf
  double bound = 0.0;       ///< (1 + 1/a)^d (2 + 2b)^d ||g||_W ||gamma||_W
  bool within_bound = false;
};

TailSum tail_sum(const GaborSystem& sys);
TailSum tail_sum(const GaborSystem& sys, const CorrelationFamily& family);

/// T f = (G_a - 1) f.
GridFunction apply_T(const GridFunction& f, const GaborSystem& sys);
/// R f = 1/<gamma,g> sum_{n != 0} a^d G_{a,b;n} f(. - n/b).
GridFunction apply_R(const GridFunction& f, const GaborSystem& sys);

/// ||G_a - 1||_inf.
double g_a_deviation(const GaborSystem& sys);

/// 2^d ||conj(g) gamma||_W / |<gamma,g>|, which bounds sup_{0<a<=1} ||G_a - 1||_inf
/// whenever G_a is real and nonnegative (in particular for g = gamma).
double m0_bound(const GaborSystem& sys);

}  // namespace gabor
