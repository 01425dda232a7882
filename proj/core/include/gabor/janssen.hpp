#pragma once

#include <vector>

#include "gabor/frame.hpp"
#include "gabor/walnut.hpp"

namespace gabor {

/// c_{l,n} = <gamma, M_{l/a} T_{n/b} g>, row-major in (l, n).
///
/// On a grid with a = A h the frequencies l/a and (l+A)/a coincide, so the
/// l-range never exceeds one alias period; a lattice that spans the full period
/// is exact.
struct JanssenLattice {
  Grid grid;
  IndexBox l_range;
  IndexBox n_range;
  double a = 0.0;
  double b = 0.0;
  cplx normalization;  ///< <gamma, g>
  double tail_mass = 0.0;  ///< sum of |c| on the outermost square shell
  std::vector<cplx> entries;

  bool contains(const Index& l, const Index& n) const { return l_range.contains(l) && n_range.contains(n); }
  cplx at(const Index& l, const Index& n) const;
};

/// Entries for |l| <= L, |n| <= N (componentwise), with l clipped to one alias period.
JanssenLattice janssen_coefficients(const GaborSystem& sys, int L, int N);

struct Summability {
  std::vector<double> partial_sums;  ///< cumulative sum of |c_{l,n}| over shells 0..max_shell
  bool satisfied_heuristic = false;  ///< last shell adds < 1e-6 of the total
};

/// Shell-by-shell partial sums of sum_{l,n} |<gamma, M_{l/a} T_{n/b} g>|.
/// A finite truncation can only suggest summability; the flag is a heuristic.
Summability coefficient_summability(const GaborSystem& sys, int max_shell);

/// S f = 1/<gamma,g> sum_{l,n} c_{l,n} M_{l/a} T_{n/b} f over the stored lattice.
GridFunction janssen_apply(const GridFunction& f, const JanssenLattice& lattice);

/// Same operator written as sum <gamma, T_{n/b} M_{l/a} g> T_{n/b} M_{l/a}.
/// Each term equals the M-then-T term because the commutation phases cancel.
GridFunction janssen_apply_tm(const GridFunction& f, const GaborSystem& sys, int L, int N);

/// Factor c with T_t M_w = c M_w T_t, i.e. exp(-2 pi i <w, t>).
cplx commutation_phase(const Vec& t, const Vec& omega);

/// G_{a,b;n}(x) = a^-d sum_l c_{l,n} exp(2 pi i <l, x/a>) on the cell [0, a)^d.
CellFunction fourier_reconstruct_G(const JanssenLattice& lattice, const Index& n);

/// l-th Fourier coefficient of a cell function by cell quadrature:
/// a^-d h^d sum_{x in cell} G(x) exp(-2 pi i <l, x/a>).
cplx cell_fourier_coefficient(const CellFunction& cell, const Index& l);

struct WexlerRazResult {
  std::vector<cplx> normalized;  ///< c_{l,n} / <gamma,g>, same layout as the lattice
  IndexBox l_range;
  IndexBox n_range;
  cplx diag;  ///< normalized[0,0]
  double max_offdiag = 0.0;
  bool is_biorthogonal = false;
};

/// Biorthogonality test c_{l,n}/<gamma,g> = delta_{l0} delta_{n0} within tol.
WexlerRazResult wexler_raz_check(const GaborSystem& sys, int L, int N, double tol = 1e-10);

}  // namespace gabor
