#pragma once

#include <vector>

#include "tielab/distribution.hpp"
#include "tielab/measures.hpp"
#include "tielab/qseries.hpp"

namespace tielab {

// Correlation kernel of the shifted first row at finite parameters, evaluated
// by trapezoid quadrature over circles.  Entries live on the half-integer
// lattice; the two contour radii must separate the pole annulus: every radius
// inside (lo, hi) with lo = v (and the geometric parameter q) and
// hi = min(1/u, 1/q), and the second radius strictly smaller than the first so
// the off-diagonal block picks up the residue ordering.
struct ContourSpec {
  double r = 0.0;   // first radius; 0 picks the annulus midpoint
  double rp = 0.0;  // second radius; 0 picks 0.98 r
  int nodes = 0;    // trapezoid nodes per circle; 0 doubles from 256 until stable
};

// One-variable weight transform of the measure.  Plancherel specs give an
// exponential, geometric ones a ratio of q-Pochhammer symbols; both reduce to
// the single-chain form when the two rates coincide or the strip is one-sided.
cdouble F_weight(cdouble z, const MeasureSpec& spec);

// Boundary factor of the kernel integrand, one branch per label pair.
// The empty label gives 1.
cdouble g_boundary(cdouble z, const MeasureSpec& spec);

// Precomputed node data: integrand pieces on each circle plus circulant tables
// for the theta factors, which depend only on angle sums and differences.
struct FiniteKernel {
  MeasureSpec spec;
  double r = 0.0;
  double rp = 0.0;
  int nodes = 0;

  std::vector<cdouble> zr;  // nodes on the first circle
  std::vector<cdouble> wp;  // nodes on the second circle

  // z-side / w-side integrand vectors: phi carries F g over the principal
  // Pochhammer pair, psi its reciprocal with flipped signs
  std::vector<cdouble> phi_plus;     // on zr
  std::vector<cdouble> psi_minus_r;  // on zr
  std::vector<cdouble> psi_minus_p;  // on wp

  // circulant theta tables, indexed by angle difference (b - a) or sum (a + b + 1)
  std::vector<cdouble> tdiff_rr, tsum_rr;      // theta(w/z), theta(u^2 z w) on (r, r)
  std::vector<cdouble> tdiff_rp, tsum_rp;      // same on (r, rp)
  std::vector<cdouble> q3_zw_rr;               // shift theta in z w on (r, r)
  std::vector<cdouble> q3_vzw_rr;              // shift theta in v^2/(z w) on (r, r)
  std::vector<cdouble> q3_zoverw_rp;           // shift theta in z/w on (r, rp)

  double theta3_t2 = 1.0;  // normalizing theta of the shift law
  double qq2_sq = 1.0;     // squared Euler factor in every prefactor
};

FiniteKernel build_finite_kernel(const MeasureSpec& spec, ContourSpec contour = {},
                                 int threads = 0);

// One kernel entry at half-integer arguments k, kp.  `which` selects the block:
// 11, 12 or 22.  The 21 block is -K12(kp, k).  The imaginary residue of the
// quadrature (a numerical diagnostic; the true entries are real) is written to
// *imag_out when given.
double kernel_entry(const FiniteKernel& kern, int which, double k, double kp,
                    double* imag_out = nullptr);

// CDF table of lambda1 + 2 D_t on m in [m_lo, m_hi] via Fredholm pfaffians of
// the kernel over suffix windows of the half-integer lattice.
DistributionTable shifted_lambda1_cdf(const FiniteKernel& kern, int m_lo, int m_hi,
                                      int threads = 0);

}  // namespace tielab
