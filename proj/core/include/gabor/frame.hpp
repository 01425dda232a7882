#pragma once

#include <cstdint>
#include <vector>

#include "gabor/grid.hpp"

namespace gabor {

/// Analysis window g, synthesis window gamma and lattice parameters (a, b).
///
/// Invariants checked at construction: both windows share a grid, |<gamma,g>| > 1e-12,
/// and a, 1/b are integer multiples of h. The time range holds every n for which
/// both shifted windows meet the domain. The frequency range is one full alias
/// period of the grid (K = 1/(b h) consecutive m), and on the grid that is the
/// complete frequency sum.
class GaborSystem {
 public:
  GaborSystem(GridFunction g, GridFunction gamma, double a, double b);
  /// g = gamma; <g, g> = ||g||_2^2 so both normalizations coincide.
  static GaborSystem self_dual(const GridFunction& g, double a, double b);

  const Grid& grid() const noexcept { return g_.grid(); }
  const GridFunction& g() const noexcept { return g_; }
  const GridFunction& gamma() const noexcept { return gamma_; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  /// a / h.
  std::int64_t time_step() const noexcept { return time_step_; }
  /// 1 / (b h).
  std::int64_t freq_period() const noexcept { return freq_period_; }
  /// <gamma, g>.
  cplx normalization() const noexcept { return normalization_; }
  bool is_self_dual() const noexcept { return self_dual_; }

  const IndexBox& g_support() const noexcept { return g_support_; }
  const IndexBox& gamma_support() const noexcept { return gamma_support_; }
  const IndexBox& time_range() const noexcept { return time_range_; }
  const IndexBox& freq_range() const noexcept { return freq_range_; }

 private:
  GridFunction g_;
  GridFunction gamma_;
  double a_;
  double b_;
  std::int64_t time_step_;
  std::int64_t freq_period_;
  cplx normalization_;
  bool self_dual_;
  IndexBox g_support_;
  IndexBox gamma_support_;
  IndexBox time_range_;
  IndexBox freq_range_;
};

/// Gabor coefficients <f, tau(na, mb) g>, row-major in (n, m).
struct CoefficientLattice {
  IndexBox time;
  IndexBox freq;
  double a = 0.0;
  double b = 0.0;
  std::vector<cplx> entries;

  cplx at(const Index& n, const Index& m) const;
};

/// (F_g f)(t, w) = <f, tau(t, w) g>.
cplx stft(const GridFunction& f, const GridFunction& g, const Vec& t, const Vec& omega);

CoefficientLattice gabor_coefficients(const GridFunction& f, const GaborSystem& sys);

/// S f = (ab)^d / <gamma,g> * sum_{n,m} <f, tau(na,mb) g> tau(na,mb) gamma, evaluated
/// term by term. O(#lattice * support) and used as the reference for the faster
/// representations.
GridFunction apply_frame_direct(const GridFunction& f, const GaborSystem& sys);

/// Synthesis half of apply_frame_direct for a precomputed lattice.
GridFunction synthesize(const CoefficientLattice& coeffs, const GaborSystem& sys);

struct TfGridSteps {
  double dt = 0.25;
  double domega = 0.25;
  /// Frequencies |w_j| <= omega_max are kept.
  double omega_max = 4.0;
  /// STFT samples below floor * max|F_g f| are skipped.
  double floor = 1e-14;
};

/// Riemann sum of the inversion integral
///   f = 1/<gamma,g> * int int (F_g f)(t,w) tau(t,w) gamma dt dw
/// on the lattice dt Z^d x domega Z^d truncated to the band |w| <= omega_max.
GridFunction reconstruct_integral(const GridFunction& f, const GridFunction& g,
                                  const GridFunction& gamma, const TfGridSteps& steps);

struct FrameBoundEstimate {
  double upper = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Largest eigenvalue of S_{a,b} = (ab)^d/||g||^2 sum <f,tau g> tau g by power
/// iteration from a seeded random start. Stops when the Rayleigh quotient changes
/// by less than `tol` (relative). Requires g = gamma.
FrameBoundEstimate estimate_frame_bounds(const GaborSystem& sys, int iterations = 200,
                                         std::uint64_t seed = 0x5eedULL, double tol = 1e-10);

}  // namespace gabor
