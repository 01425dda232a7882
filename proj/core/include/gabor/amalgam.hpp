#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gabor/grid.hpp"

namespace gabor {

/// Exponent in [1, inf], with infinity held symbolically.
class Exponent {
 public:
  explicit Exponent(double value);
  static Exponent infinity() noexcept { return Exponent(); }
  /// Accepts a number or "inf"/"infinity".
  static Exponent parse(const std::string& text);

  bool is_infinite() const noexcept { return infinite_; }
  /// Finite value; throws RangeError for infinity.
  double value() const;
  /// 1/p, with 1/inf = 0.
  double reciprocal() const noexcept { return infinite_ ? 0.0 : 1.0 / value_; }
  std::string to_string() const;

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  Exponent() : value_(0.0), infinite_(true) {}
  double value_;
  bool infinite_;
};

/// (p, q) indexing W(L^p, l^q).
struct ExponentPair {
  Exponent p;
  Exponent q;
};

/// p' with 1/p + 1/p' = 1.
Exponent conjugate_exponent(const Exponent& p);
ExponentPair conjugate(const ExponentPair& pq);

/// Discrete L^p norm of f restricted to the unit cube [k, k+1)^d.
double lp_norm_on_cube(const GridFunction& f, const Index& cube, const Exponent& p);

/// Local L^p norms of every unit cube meeting the grid, in row-major cube order.
std::vector<std::pair<Index, double>> cube_norms(const GridFunction& f, const Exponent& p);

/// Global discrete L^p norm.
double lp_norm(const GridFunction& f, const Exponent& p);

/// l^p norm of a nonnegative sequence, scaled by its maximum so large q cannot overflow.
double sequence_norm(const std::vector<double>& values, const Exponent& q);

/// (sum_k ||f . T_k chi_Q||_p^q)^(1/q); sup over k when q = inf.
double amalgam_norm(const GridFunction& f, const ExponentPair& pq);

/// ||g||_W = sum_k ||g . T_k chi_Q||_inf, i.e. W(L^inf, l^1).
double wiener_norm(const GridFunction& g);

/// <f, g> = integral f conj(g), the pairing between W(L^p,l^q) and W(L^p',l^q').
cplx pairing(const GridFunction& f, const GridFunction& g);

struct HolderCheck {
  cplx pairing;
  double lhs;  ///< |<f, g>|
  double rhs;  ///< ||f||_{W(L^p,l^q)} ||g||_{W(L^p',l^q')}
  bool holds;
};

/// Diagnostic for |<f,g>| <= ||f||_{W(L^p,l^q)} ||g||_{W(L^p',l^q')}.
HolderCheck holder_check(const GridFunction& f, const GridFunction& g, const ExponentPair& pq);

}  // namespace gabor
