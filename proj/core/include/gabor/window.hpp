#pragma once

#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gabor/grid.hpp"

namespace gabor {

enum class WindowFamily { IndicatorCube, BSpline, Gaussian, FatCantor };

/// Parametric window (or test function) sampled onto a grid.
///
/// - IndicatorCube: chi_[0,side)^d
/// - BSpline: tensor product of the cardinal B-spline of `order` on [0, order)
/// - Gaussian: prod_j exp(-pi x_j^2 / sigma^2), cut off outside |x_j| <= radius
/// - FatCantor: indicator of the depth-k Smith-Volterra-Cantor set in [0,1] (d = 1)
///
/// `shift` translates the profile analytically (no commensurability needed);
/// empty means no shift.
struct WindowSpec {
  WindowFamily family = WindowFamily::IndicatorCube;
  double side = 1.0;
  int order = 2;
  double sigma = 1.0;
  double radius = 6.0;
  int depth = 1;
  Vec shift;

  static WindowSpec indicator(double side = 1.0);
  static WindowSpec bspline(int order);
  static WindowSpec gaussian(double sigma, double radius);
  static WindowSpec fat_cantor(int depth);
  WindowSpec shifted(Vec by) const;

  /// Throws ConfigError on non-positive parameters.
  void validate() const;
};

GridFunction sample_window(const WindowSpec& spec, const Grid& grid);

/// Cardinal B-spline N_m on [0, m): N_1 = chi_[0,1), N_m = N_{m-1} * chi_[0,1).
double cardinal_bspline(int order, double x);

/// Closed intervals [l, r] of the depth-k Smith-Volterra-Cantor set E_k.
/// Step j removes an open middle interval of length 4^-j from each of the
/// 2^(j-1) remaining pieces.
std::vector<std::pair<double, double>> fat_cantor_intervals(int depth);

/// |E_k| = 1 - (1/2)(1 - 2^-k).
double fat_cantor_measure(int depth);

void to_json(nlohmann::json& j, const WindowSpec& spec);
void from_json(const nlohmann::json& j, WindowSpec& spec);

}  // namespace gabor
