#include "tielab/finite_kernel.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>
#include <utility>
#include <vector>

#include "tielab/errors.hpp"
#include "tielab/parallel.hpp"
#include "tielab/pfaffian.hpp"

namespace tielab {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;

cdouble powi(cdouble z, long long e) {
  if (e < 0) return 1.0 / powi(z, -e);
  cdouble out = 1.0;
  for (cdouble base = z; e > 0; e >>= 1, base *= base)
    if (e & 1) out *= base;
  return out;
}

double effective_v(const MeasureSpec& spec) {
  return spec.variant == TieVariant::upwards ? 1.0 : spec.v;
}

// all integrand poles sit on radii <= lo or >= hi
void pole_annulus(const MeasureSpec& spec, double* lo, double* hi) {
  *lo = effective_v(spec);
  *hi = spec.u > 0 ? 1.0 / spec.u : 1e3;
  if (spec.kind == MeasureKind::geometric) {
    *lo = std::max(*lo, spec.q);
    *hi = std::min(*hi, 1.0 / spec.q);
  }
  *lo = std::max(*lo, 1e-3);  // keep the essential singularity at 0 away
  require(*lo < *hi, "no contour annulus: boundary rates pinch the radii");
}

long long half_integer_twice(double k, const char* what) {
  const double two = 2.0 * k;
  const long long r = std::llround(two);
  require(std::abs(two - r) < 1e-9 && (r % 2 != 0),
          std::string(what) + " must be a half-integer k + 1/2");
  return r;
}

void fill_tables(FiniteKernel& kern, int threads) {
  const MeasureSpec& spec = kern.spec;
  const int n_nodes = kern.nodes;
  const double u = spec.u;
  const double v = effective_v(spec);
  const double qh = u * v;
  const double qh2 = qh * qh;
  const double qh4 = qh2 * qh2;
  const double t = spec.t;
  const double r = kern.r;
  const double rp = kern.rp;
  const double two_pi = 2.0 * std::numbers::pi;

  kern.zr.assign(n_nodes, 0.0);
  kern.wp.assign(n_nodes, 0.0);
  kern.phi_plus.assign(n_nodes, 0.0);
  kern.psi_minus_r.assign(n_nodes, 0.0);
  kern.psi_minus_p.assign(n_nodes, 0.0);
  kern.tdiff_rr.assign(n_nodes, 0.0);
  kern.tsum_rr.assign(n_nodes, 0.0);
  kern.tdiff_rp.assign(n_nodes, 0.0);
  kern.tsum_rp.assign(n_nodes, 0.0);
  kern.q3_zw_rr.assign(n_nodes, 0.0);
  kern.q3_vzw_rr.assign(n_nodes, 0.0);
  kern.q3_zoverw_rp.assign(n_nodes, 0.0);

  // nodes offset by half a step: the set is conjugation-symmetric and avoids
  // the negative real axis, so real integrands come out real to roundoff
  parallel_for(n_nodes, threads, [&](long long j) {
    const double th = -std::numbers::pi + two_pi * (static_cast<double>(j) + 0.5) / n_nodes;
    const cdouble z = std::polar(r, th);
    const cdouble w = std::polar(rp, th);
    kern.zr[j] = z;
    kern.wp[j] = w;
    const cdouble fz = F_weight(z, spec) * g_boundary(z, spec);
    kern.phi_plus[j] = fz / (q_pochhammer(u * z, qh) * q_pochhammer(-v / z, qh));
    kern.psi_minus_r[j] =
        1.0 / (fz * q_pochhammer(-u * z, qh) * q_pochhammer(v / z, qh));
    const cdouble fw = F_weight(w, spec) * g_boundary(w, spec);
    kern.psi_minus_p[j] =
        1.0 / (fw * q_pochhammer(-u * w, qh) * q_pochhammer(v / w, qh));
  });

  // theta factors depend on z w or w/z only, hence on one angle index mod N
  parallel_for(n_nodes, threads, [&](long long m) {
    const cdouble em = std::polar(1.0, two_pi * static_cast<double>(m) / n_nodes);
    kern.tdiff_rr[m] = theta_q(em, qh2);
    kern.tdiff_rp[m] = theta_q((rp / r) * em, qh2);
    if (u > 0) {
      kern.tsum_rr[m] = theta_q(u * u * r * r * em, qh2);
      kern.tsum_rp[m] = theta_q(u * u * r * rp * em, qh2);
    } else {  // theta of a vanishing argument degenerates to 1 at base 0
      kern.tsum_rr[m] = 1.0;
      kern.tsum_rp[m] = 1.0;
    }
    const cdouble zw_angle = r * r * em;
    if (v > 0) {
      const cdouble x = t * zw_angle / (v * v);
      kern.q3_zw_rr[m] = theta3(x * x, qh4);
      const cdouble y = t * v * v / zw_angle;
      kern.q3_vzw_rr[m] = theta3(y * y, qh4);
    } else {  // both tables multiply a v^2 prefactor and are never used
      kern.q3_zw_rr[m] = 1.0;
      kern.q3_vzw_rr[m] = 1.0;
    }
    const cdouble d = t * (r / rp) * em;
    kern.q3_zoverw_rp[m] = theta3(d * d, qh4);
  });

  kern.theta3_t2 = theta3(t * t, qh4).real();
  kern.qq2_sq = std::norm(q_pochhammer(qh2, qh2));
}

// Rectangular block of kernel entries, rows indexed by ks and columns by kps.
// Each entry is a double contour integral; with N nodes per circle it is a
// sandwich p_z^T R p_w where R has circulant structure, evaluated by streaming
// rows of R so only O(N) of it is alive at a time.
MatrixXcd entry_block(const FiniteKernel& kern, int which, const std::vector<double>& ks,
                      const std::vector<double>& kps, int threads) {
  const int n_nodes = kern.nodes;
  const int rows = static_cast<int>(ks.size());
  const int cols = static_cast<int>(kps.size());
  const MeasureSpec& spec = kern.spec;
  const double v = effective_v(spec);
  const double t = spec.t;

  double pref = 0.0;
  const std::vector<cdouble>* zside = nullptr;
  const std::vector<cdouble>* wside = nullptr;
  const std::vector<cdouble>* znodes = &kern.zr;
  const std::vector<cdouble>* wnodes = &kern.zr;
  // lattice exponents: twice the power of z (resp. w) under the integral is an
  // odd integer, so every node power is an exact integer power
  long long zpow_twice_off = 0, wpow_twice_off = 0;
  int zsign = 0, wsign = 0;
  switch (which) {
    case 11:
      pref = v * v / t * kern.qq2_sq / kern.theta3_t2;
      zside = &kern.phi_plus;
      wside = &kern.phi_plus;
      zsign = -1;
      zpow_twice_off = 1;  // z^{-(k + 1/2)}
      wsign = -1;
      wpow_twice_off = 3;  // w^{-(kp + 3/2)}
      break;
    case 12:
      pref = kern.qq2_sq / kern.theta3_t2;
      zside = &kern.phi_plus;
      wside = &kern.psi_minus_p;
      wnodes = &kern.wp;
      zsign = -1;
      zpow_twice_off = 1;  // z^{-(k + 1/2)}
      wsign = +1;
      wpow_twice_off = 1;  // w^{+(kp + 1/2)}
      break;
    case 22:
      pref = t * v * v * kern.qq2_sq / kern.theta3_t2;
      zside = &kern.psi_minus_r;
      wside = &kern.psi_minus_r;
      zsign = +1;
      zpow_twice_off = -1;  // z^{+(k - 1/2)}
      wsign = +1;
      wpow_twice_off = -3;  // w^{+(kp - 3/2)}
      break;
    default:
      require(false, "kernel block must be one of 11, 12, 22");
  }

  MatrixXcd out = MatrixXcd::Zero(rows, cols);
  if (pref == 0.0) return out;

  MatrixXcd pz(rows, n_nodes), pw(cols, n_nodes);
  for (int i = 0; i < rows; ++i) {
    const long long twice = half_integer_twice(ks[i], "row argument");
    const long long e = zsign * (twice + zpow_twice_off) / 2;
    for (int a = 0; a < n_nodes; ++a) pz(i, a) = powi((*znodes)[a], e) * (*zside)[a];
  }
  for (int j = 0; j < cols; ++j) {
    const long long twice = half_integer_twice(kps[j], "column argument");
    const long long e = wsign * (twice + wpow_twice_off) / 2;
    for (int a = 0; a < n_nodes; ++a) pw(j, a) = powi((*wnodes)[a], e) * (*wside)[a];
  }

  // fixed chunking so the reduction order (hence the rounding) never depends
  // on the thread count
  const int chunks = std::min(64, n_nodes);
  std::vector<MatrixXcd> partial(chunks, MatrixXcd::Zero(rows, cols));
  parallel_for(chunks, threads > 0 ? threads : default_threads(), [&](long long c) {
    const int a_begin = static_cast<int>(c * n_nodes / chunks);
    const int a_end = static_cast<int>((c + 1) * n_nodes / chunks);
    VectorXcd row(n_nodes);
    for (int a = a_begin; a < a_end; ++a) {
      for (int b = 0; b < n_nodes; ++b) {
        const int diff = (b - a + n_nodes) % n_nodes;
        const int sum = (a + b + 1) % n_nodes;
        switch (which) {
          case 11:
            row(b) = kern.tdiff_rr[diff] / kern.tsum_rr[sum] * kern.q3_zw_rr[sum];
            break;
          case 12: {
            const int diff_zw = (a - b + n_nodes) % n_nodes;
            row(b) = kern.tsum_rp[sum] / kern.tdiff_rp[diff] * kern.q3_zoverw_rp[diff_zw];
            break;
          }
          default:
            row(b) = kern.tdiff_rr[diff] / kern.tsum_rr[sum] * kern.q3_vzw_rr[sum];
        }
      }
      const VectorXcd va = pw * row;  // cols
      partial[c].noalias() += pz.col(a) * va.transpose();
    }
  });
  for (const MatrixXcd& p : partial) out += p;
  out *= pref / (static_cast<double>(n_nodes) * static_cast<double>(n_nodes));
  return out;
}

FiniteKernel build_at(const MeasureSpec& spec, double r, double rp, int nodes, int threads) {
  FiniteKernel kern;
  kern.spec = spec;
  kern.r = r;
  kern.rp = rp;
  kern.nodes = nodes;
  fill_tables(kern, threads);
  return kern;
}

// entries probed for the node-doubling convergence certificate
constexpr struct {
  int which;
  double k, kp;
} kProbes[] = {
    {11, 0.5, 1.5}, {12, 0.5, 0.5}, {12, -1.5, 2.5}, {22, 0.5, 1.5}, {12, 3.5, -0.5},
};

double probe_gap(const FiniteKernel& a, const FiniteKernel& b, int threads) {
  double worst = 0.0;
  for (const auto& p : kProbes) {
    const cdouble va = entry_block(a, p.which, {p.k}, {p.kp}, threads)(0, 0);
    const cdouble vb = entry_block(b, p.which, {p.k}, {p.kp}, threads)(0, 0);
    worst = std::max({worst, std::abs(va.real() - vb.real()), std::abs(va.imag()),
                      std::abs(vb.imag())});
  }
  return worst;
}

}  // namespace

cdouble F_weight(cdouble z, const MeasureSpec& spec) {
  const double u = spec.u;
  if (spec.kind == MeasureKind::plancherel) {
    if (spec.variant == TieVariant::upwards)
      return std::exp(spec.eps * (z - 1.0 / z) / (1.0 - u * u));
    const double v = spec.v;
    const double q2 = u * u * v * v;
    return std::exp(spec.eps * ((1.0 + u * u) * z - (1.0 + v * v) / z) / (1.0 - q2));
  }
  if (spec.variant == TieVariant::upwards) {
    const cdouble one =
        q_pochhammer(spec.q / z, u * u) / q_pochhammer(spec.q * z, u * u);
    return powi(one, spec.n);
  }
  const double v = spec.v;
  const double qh2 = u * u * v * v;
  const cdouble one = q_pochhammer(spec.q / z, qh2) * q_pochhammer(spec.q * v * v / z, qh2) /
                      (q_pochhammer(spec.q * z, qh2) * q_pochhammer(spec.q * u * u * z, qh2));
  return powi(one, spec.n);
}

cdouble g_boundary(cdouble z, const MeasureSpec& spec) {
  if (spec.label == BoundaryLabel::none) return 1.0;
  const double u = spec.u;
  const double v = effective_v(spec);
  const double qh = u * v;
  const double qh2 = qh * qh;
  switch (spec.label) {
    case BoundaryLabel::aa: {
      cdouble out = q_pochhammer(u * z, qh) / q_pochhammer(v / z, qh);
      out *= q_pochhammer(spec.a1 * u * v * v / z, qh2) * q_pochhammer(spec.a2 * v / z, qh2) /
             (q_pochhammer(spec.a1 * u * z, qh2) *
              q_pochhammer(spec.a2 * u * u * v * z, qh2));
      out /= q_pochhammer(cdouble(spec.a1 * spec.a2 * qh), qh2) * q_pochhammer(cdouble(-qh), qh);
      return out;
    }
    case BoundaryLabel::bb: {
      cdouble out = q_pochhammer(-v / z, qh) / q_pochhammer(-u * z, qh);
      out *= q_pochhammer(-spec.b1 * u * z, qh2) *
             q_pochhammer(-spec.b2 * u * u * v * z, qh2) /
             (q_pochhammer(-spec.b1 * u * v * v / z, qh2) *
              q_pochhammer(-spec.b2 * v / z, qh2));
      out /= q_pochhammer(cdouble(spec.b1 * spec.b2 * qh), qh2) * q_pochhammer(cdouble(-qh), qh);
      return out;
    }
    default: {  // ab
      const double a1 = spec.a1, b2 = spec.b2;
      cdouble num = q_pochhammer(u * z, qh2) * q_pochhammer(-v / z, qh2) *
                    q_pochhammer(a1 * u * v * v / z, qh2) *
                    q_pochhammer(-b2 * u * u * v * z, qh2) * q_pochhammer(cdouble(-qh), qh2) *
                    q_pochhammer(cdouble(-a1 * b2 * qh), qh2) *
                    q_pochhammer(cdouble(a1 * qh2), qh2) * q_pochhammer(cdouble(b2 * qh2), qh2);
      cdouble den = q_pochhammer(-u * u * v * z, qh2) * q_pochhammer(u * v * v / z, qh2) *
                    q_pochhammer(a1 * u * z, qh2) * q_pochhammer(-b2 * v / z, qh2) *
                    q_pochhammer(cdouble(-a1 * qh), qh2) * q_pochhammer(cdouble(-b2 * qh), qh2);
      cdouble tail = q_pochhammer(cdouble(-qh), qh) * q_pochhammer(cdouble(-qh), qh) *
                     q_pochhammer(cdouble(a1 * qh), qh) * q_pochhammer(cdouble(b2 * qh), qh);
      return num / (den * tail);
    }
  }
}

FiniteKernel build_finite_kernel(const MeasureSpec& spec, ContourSpec contour, int threads) {
  spec.validate();
  double lo = 0.0, hi = 0.0;
  pole_annulus(spec, &lo, &hi);
  const double r = contour.r > 0.0 ? contour.r : std::sqrt(lo * hi);
  const double rp = contour.rp > 0.0 ? contour.rp : 0.98 * r;
  require(lo < r && r < hi, "first contour radius escapes the pole annulus");
  require(lo < rp && rp < r, "second contour radius must lie strictly inside the first");

  if (contour.nodes > 0) {
    require(contour.nodes >= 8, "need at least 8 quadrature nodes");
    return build_at(spec, r, rp, contour.nodes, threads);
  }
  int nodes = 256;
  FiniteKernel prev = build_at(spec, r, rp, nodes, threads);
  for (;;) {
    if (2 * nodes > 8192)
      throw DiagnosticError("contour quadrature not stable at 8192 nodes per circle");
    FiniteKernel next = build_at(spec, r, rp, 2 * nodes, threads);
    if (probe_gap(prev, next, threads) < 1e-10) return next;
    prev = std::move(next);
    nodes *= 2;
  }
}

double kernel_entry(const FiniteKernel& kern, int which, double k, double kp,
                    double* imag_out) {
  const MatrixXcd one = entry_block(kern, which, {k}, {kp}, 0);
  if (imag_out) *imag_out = one(0, 0).imag();
  return one(0, 0).real();
}

DistributionTable shifted_lambda1_cdf(const FiniteKernel& kern, int m_lo, int m_hi,
                                      int threads) {
  require(m_lo <= m_hi, "lattice range is empty");

  // push the window top up until the kernel has visibly decayed there, so the
  // finite pfaffian stands in for the infinite one
  int top = m_hi + 3;
  for (;;) {
    const double k = top - 0.5;
    // gauge-invariant decay measure: single entries pick up spurious r^(+-k)
    // factors (pure roundoff) when the contour radius is away from 1, but the
    // diagonal of the (1,2) block and the geometric mean of the (1,1)/(2,2)
    // pair are insensitive to that scaling
    const double e12 = std::abs(entry_block(kern, 12, {k}, {k}, threads)(0, 0));
    const double e11 = std::abs(entry_block(kern, 11, {k}, {k + 1.0}, threads)(0, 0));
    const double e22 = std::abs(entry_block(kern, 22, {k}, {k + 1.0}, threads)(0, 0));
    const double edge = e12 + std::sqrt(e11 * e22);
    if (edge < 1e-10) break;
    top += 4;
    if (top - m_hi > 160)
      throw DiagnosticError("pfaffian window does not close: kernel fails to decay");
  }

  const int width = top - m_lo;
  std::vector<double> kv(width);
  for (int j = 0; j < width; ++j) kv[j] = m_lo + 0.5 + j;
  MatrixXcd t11 = entry_block(kern, 11, kv, kv, threads);
  MatrixXcd t12 = entry_block(kern, 12, kv, kv, threads);
  MatrixXcd t22 = entry_block(kern, 22, kv, kv, threads);
  // rescale by the diagonal congruence diag(s_i, 1/s_i) with s_i = r^{k_i}:
  // the pfaffian of J - S is exactly invariant (the conjugation has unit
  // determinant and fixes J), while the rescaled tables shed the r^(+-k)
  // roundoff amplification that contaminates raw entries off |z| = 1
  std::vector<double> sv(width);
  for (int j = 0; j < width; ++j) sv[j] = std::pow(kern.r, kv[j]);
  for (int i = 0; i < width; ++i)
    for (int j = 0; j < width; ++j) {
      t11(i, j) *= sv[i] * sv[j];
      t12(i, j) *= sv[i] / sv[j];
      t22(i, j) /= sv[i] * sv[j];
    }
  const double resid = std::max({t11.imag().cwiseAbs().maxCoeff(),
                                 t12.imag().cwiseAbs().maxCoeff(),
                                 t22.imag().cwiseAbs().maxCoeff()});
  if (resid > 1e-8)
    throw DiagnosticError("kernel entries carry imaginary residue " + format_g17(resid));
  const MatrixXd k11 = t11.real();
  const MatrixXd k12 = t12.real();
  const MatrixXd k22 = t22.real();

  DistributionTable table;
  table.integer_arg = true;
  table.tail_bound = 1e-9;
  table.meta.emplace_back("contour_r", format_g17(kern.r));
  table.meta.emplace_back("contour_rp", format_g17(kern.rp));
  table.meta.emplace_back("contour_nodes", std::to_string(kern.nodes));
  table.meta.emplace_back("window_top", std::to_string(top));

  std::vector<double> vals;
  vals.reserve(m_hi - m_lo + 1);
  for (int m = m_lo; m <= m_hi; ++m) {
    const int off = m - m_lo;  // window holds the lattice points above m
    const int w = width - off;
    double pf = fredholm_pfaffian_lattice(
        [&](int a, int b, int i, int j) {
          const int gi = i + off, gj = j + off;
          if (a == 0 && b == 0) return k11(gi, gj);
          if (a == 0 && b == 1) return k12(gi, gj);
          if (a == 1 && b == 0) return -k12(gj, gi);
          return k22(gi, gj);
        },
        w);
    pf = std::min(std::max(pf, 0.0), 1.0);
    // quadrature noise can break monotonicity at the converged-digit level
    if (!vals.empty() && pf < vals.back() && vals.back() - pf < 2e-10) pf = vals.back();
    vals.push_back(pf);
  }
  for (int m = m_lo; m <= m_hi; ++m) {
    table.arg.push_back(m);
    table.cdf.push_back(vals[m - m_lo]);
  }
  table.validate();
  return table;
}

}  // namespace tielab
