#include "tielab/measures.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>

#include "tielab/parallel.hpp"
#include "tielab/qseries.hpp"
#include "tielab/tableaux.hpp"

namespace tielab {

void MeasureSpec::validate() const {
  require(u >= 0.0 && u < 1.0, "u must lie in [0,1)");
  if (variant == TieVariant::upwards)
    require(v == 1.0, "the upwards variant requires v = 1");
  else
    require(v >= 0.0 && v < 1.0, "v must lie in [0,1)");
  if (kind == MeasureKind::plancherel) {
    require(eps >= 0.0, "the skew rate must be nonnegative");
  } else {
    require(q >= 0.0 && q < 1.0, "q must lie in [0,1)");
    require(n >= 1, "row bound n must be >= 1");
  }
  for (double p : {a1, a2, b1, b2}) require(p > 0.0 && p <= 1.0, "boundary markers lie in (0,1]");
  require(t > 0.0, "shift parameter t must be positive");
}

double boundary_weight(BoundaryLabel label, const Partition& mu, const Partition& second,
                       double a1, double a2, double b1, double b2) {
  switch (label) {
    case BoundaryLabel::none:
      return 1.0;
    case BoundaryLabel::aa:
      return std::pow(a1, odd_cols(mu)) * std::pow(a2, odd_cols(second));
    case BoundaryLabel::ab:
      return std::pow(a1, odd_cols(mu)) * std::pow(b2, odd_rows(second));
    case BoundaryLabel::bb:
      return std::pow(b1, odd_rows(mu)) * std::pow(b2, odd_rows(second));
  }
  return 1.0;
}

namespace {

double skew_weight(const MeasureSpec& spec, const Partition& outer, const Partition& inner) {
  return spec.kind == MeasureKind::plancherel ? plancherel_weight(spec.eps, outer, inner)
                                              : geometric_weight(spec.q, spec.n, outer, inner);
}

double marker_first(const MeasureSpec& spec, const Partition& mu) {
  switch (spec.label) {
    case BoundaryLabel::none:
      return 1.0;
    case BoundaryLabel::aa:
    case BoundaryLabel::ab:
      return std::pow(spec.a1, odd_cols(mu));
    case BoundaryLabel::bb:
      return std::pow(spec.b1, odd_rows(mu));
  }
  return 1.0;
}

double marker_second(const MeasureSpec& spec, const Partition& p) {
  switch (spec.label) {
    case BoundaryLabel::none:
      return 1.0;
    case BoundaryLabel::aa:
      return std::pow(spec.a2, odd_cols(p));
    case BoundaryLabel::ab:
    case BoundaryLabel::bb:
      return std::pow(spec.b2, odd_rows(p));
  }
  return 1.0;
}

double skew_rate(const MeasureSpec& spec) {
  return spec.kind == MeasureKind::plancherel ? spec.eps : spec.q;
}

// sum over mu of marker(mu) uu^|mu| times the skew weight of lambda/mu.
// The bounded-row kind is summed over chains of n horizontal strips (one
// SSYT letter per level), which avoids per-pair determinant counts.
double mu_sum(const MeasureSpec& spec, const Partition& lam,
              double uu, const std::function<double(const Partition&)>& marker) {
  const long long w_lam = weight(lam);
  if (skew_rate(spec) == 0.0)  // skew weight forces mu = lambda
    return marker(lam) * std::pow(uu, static_cast<double>(w_lam));
  if (spec.kind == MeasureKind::plancherel) {
    if (uu == 0.0) return plancherel_weight(spec.eps, lam, Partition{});
    double acc = 0.0;
    for_each_subdiagram(lam, 0, [&](const Partition& mu) {
      acc += marker(mu) * std::pow(uu, static_cast<double>(weight(mu))) *
             plancherel_weight(spec.eps, lam, mu);
    });
    return acc;
  }
  double total = 0.0;
  std::function<void(const Partition&, int, double)> level =
      [&](const Partition& kap, int depth, double qfac) {
        if (depth == spec.n) {
          total += marker(kap) * std::pow(uu, static_cast<double>(weight(kap))) * qfac;
          return;
        }
        if (kap.empty()) {
          level(kap, depth + 1, qfac);
          return;
        }
        std::vector<int> pred(kap.size());
        std::function<void(int, double)> rows = [&](int i, double f) {
          if (i == static_cast<int>(kap.size())) {
            Partition m(pred.begin(), pred.end());
            normalize(m);
            level(m, depth + 1, f);
            return;
          }
          for (int pv = part(kap, i + 2); pv <= kap[i]; ++pv) {
            pred[i] = pv;
            rows(i + 1, f * std::pow(spec.q, kap[i] - pv));
          }
        };
        rows(0, qfac);
      };
  level(lam, 0, 1.0);
  return total;
}

}  // namespace

double unnormalized_weight(const MeasureSpec& spec, const Partition& mu, const Partition& lambda) {
  require(spec.variant == TieVariant::upwards, "pair weights belong to the upwards variant");
  if (!contains(lambda, mu)) return 0.0;
  return boundary_weight(spec.label, mu, lambda, spec.a1, spec.a2, spec.b1, spec.b2) *
         std::pow(spec.u, static_cast<double>(weight(mu))) * skew_weight(spec, lambda, mu);
}

double unnormalized_weight(const MeasureSpec& spec, const Partition& mu, const Partition& lambda,
                           const Partition& nu) {
  require(spec.variant == TieVariant::updown, "triple weights belong to the up-down variant");
  if (!contains(lambda, mu) || !contains(lambda, nu)) return 0.0;
  return boundary_weight(spec.label, mu, nu, spec.a1, spec.a2, spec.b1, spec.b2) *
         std::pow(spec.u, static_cast<double>(weight(mu))) *
         std::pow(spec.v, static_cast<double>(weight(nu))) * skew_weight(spec, lambda, mu) *
         skew_weight(spec, lambda, nu);
}

double lambda_marginal_weight(const MeasureSpec& spec, const Partition& lambda) {
  auto m1 = [&](const Partition& p) { return marker_first(spec, p); };
  auto m2 = [&](const Partition& p) { return marker_second(spec, p); };
  if (spec.variant == TieVariant::upwards)
    return marker_second(spec, lambda) * mu_sum(spec, lambda, spec.u, m1);
  return mu_sum(spec, lambda, spec.u, m1) * mu_sum(spec, lambda, spec.v, m2);
}

double shell_sum_exact(const MeasureSpec& spec, int w, int threads) {
  spec.validate();
  auto parts = partitions_of(w);
  std::vector<double> vals(parts.size());
  parallel_for(static_cast<long long>(parts.size()), threads <= 0 ? default_threads() : threads,
               [&](long long i) {
                 vals[static_cast<std::size_t>(i)] =
                     lambda_marginal_weight(spec, parts[static_cast<std::size_t>(i)]);
               });
  double acc = 0.0;
  for (double vv : vals) acc += vv;
  return acc;
}

std::vector<double> shell_envelope(const MeasureSpec& spec, int w_max) {
  spec.validate();
  const bool planch = spec.kind == MeasureKind::plancherel;
  const bool updown = spec.variant == TieVariant::updown;

  // row factor: upper bound on the one-row mu-sum between floor c and a,
  // dropping markers (<= 1) and the interaction between rows
  std::vector<double> bc(static_cast<std::size_t>(w_max) + 1, 1.0);
  if (!planch)
    for (int len = 1; len <= w_max; ++len)
      bc[len] = bc[len - 1] * (spec.n - 1.0 + len) / len;  // C(n-1+len, len)
  auto psi_geo = [&](int a, int c, double uu) {
    double s = 0.0;
    for (int m = c; m <= a; ++m) s += std::pow(uu, m) * std::pow(spec.q, a - m) * bc[a - m];
    return s;
  };
  auto psi_pl = [&](int a, double uu) {
    double s = 0.0, inv_fact = 1.0;
    for (int len = 0; len <= a; ++len) {
      if (len > 0) inv_fact /= len;
      s += std::pow(uu, a - len) * std::pow(spec.eps, len) * inv_fact;
    }
    return s;
  };

  std::vector<double> phi_pl;
  std::vector<std::vector<double>> phi;  // phi[a][c], c <= a
  if (planch) {
    phi_pl.resize(static_cast<std::size_t>(w_max) + 1);
    for (int a = 0; a <= w_max; ++a)
      phi_pl[a] = psi_pl(a, spec.u) * (updown ? psi_pl(a, spec.v) : 1.0);
  } else {
    phi.resize(static_cast<std::size_t>(w_max) + 1);
    for (int a = 0; a <= w_max; ++a) {
      phi[a].resize(static_cast<std::size_t>(a) + 1);
      for (int c = 0; c <= a; ++c)
        phi[a][c] = psi_geo(a, c, spec.u) * (updown ? psi_geo(a, c, spec.v) : 1.0);
    }
  }

  // walk partitions row by row; a window of the last n parts carries the
  // pending row factors (the factorial kind needs only the last part, and
  // emits its factor immediately)
  const std::size_t n_win = planch ? 1 : static_cast<std::size_t>(spec.n);
  std::vector<double> env(static_cast<std::size_t>(w_max) + 1, 0.0);
  std::vector<std::map<std::vector<int>, double>> levels(static_cast<std::size_t>(w_max) + 1);
  levels[0][{}] = 1.0;
  for (int used = 0; used <= w_max; ++used) {
    for (auto& state : levels[used]) {
      const std::vector<int>& win = state.first;
      double mass = state.second;
      double closed = mass;
      if (!planch)
        for (int wv : win) closed *= phi[wv][0];
      env[used] += closed;
      int pmax = w_max - used;
      if (!win.empty()) pmax = std::min(pmax, win.back());
      for (int p = 1; p <= pmax; ++p) {
        double f = 1.0;
        std::vector<int> nw = win;
        if (planch) {
          f = phi_pl[p];
          nw.assign(1, p);
        } else if (nw.size() == n_win) {
          f = phi[nw.front()][p];
          nw.erase(nw.begin());
          nw.push_back(p);
        } else {
          nw.push_back(p);
        }
        levels[used + p][nw] += mass * f;
      }
    }
    levels[used].clear();
  }
  return env;
}

namespace {

// bound on sum_{W > cap} shell mass, certified or refused
double certified_tail(const MeasureSpec& spec, int cap, const std::vector<double>& shell_true) {
  // exact special case: no boundary emission at all, factorial kind, folded
  // variant -- the shell mass collapses to eps^(2W)/W!
  if (spec.kind == MeasureKind::plancherel && spec.variant == TieVariant::updown &&
      spec.u == 0.0 && spec.v == 0.0) {
    // check enumeration against the closed shell mass where both exist
    double term = 1.0;
    for (int w = 1; w <= cap; ++w) {
      term *= spec.eps * spec.eps / w;
      if (std::abs(term - shell_true[w]) > 1e-9 * std::max(term, 1e-30))
        throw DiagnosticError("enumerated shell mass disagrees with its closed form");
    }
    double tail = 0.0;
    int w = cap;
    while (true) {
      ++w;
      term *= spec.eps * spec.eps / w;
      tail += term;
      double ratio = spec.eps * spec.eps / (w + 1);
      if (ratio < 0.5 && term < 1e-25 * (1.0 + tail)) {
        tail += term * ratio / (1.0 - ratio);
        break;
      }
      if (w > cap + 100000) throw DiagnosticError("shift-free factorial tail did not close");
    }
    return tail;
  }

  const int extra = spec.kind == MeasureKind::plancherel ? 160
                    : spec.n == 1                        ? 160
                    : spec.n == 2                        ? 90
                                                         : 56;
  const int w_dp = cap + extra;
  std::vector<double> env = shell_envelope(spec, w_dp);
  for (int w = 0; w <= cap && w < static_cast<int>(shell_true.size()); ++w)
    if (env[w] < shell_true[w] * (1.0 - 1e-7) - 1e-300)
      throw DiagnosticError("internal: shell envelope fell below the enumerated mass");

  double tail = 0.0;
  for (int w = cap + 1; w <= w_dp; ++w) tail += env[w];

  // geometric continuation beyond the window, certified by the stability of
  // the last shell-to-shell ratios
  const double tiny = 1e-250;
  if (env[w_dp] <= tiny) return tail + 1e-200;
  double rmax = 0.0, rmin = 1e300;
  for (int w = w_dp - 19; w <= w_dp; ++w) {
    if (env[w - 1] <= tiny) throw DiagnosticError("envelope vanished inside the ratio window");
    double r = env[w] / env[w - 1];
    rmax = std::max(rmax, r);
    rmin = std::min(rmin, r);
  }
  if (rmax > 0.9)
    throw DiagnosticError("envelope shells decay too slowly to certify the tail (ratio " +
                          format_g17(rmax) + ")");
  if (rmax - rmin > 0.03 * rmax)
    throw DiagnosticError("envelope shell ratios have not stabilized; tail not certified");
  double theta = std::min(0.95, 1.05 * rmax);
  return tail + env[w_dp] * theta / (1.0 - theta);
}

}  // namespace

DistributionTable lambda1_cdf_exact(const MeasureSpec& spec, int cap, double tol_tail,
                                    int threads) {
  spec.validate();
  require(tol_tail > 0.0, "tail tolerance must be positive");
  if (threads <= 0) threads = default_threads();
  std::vector<int> caps;
  if (cap > 0)
    caps.push_back(cap);
  else
    caps = {16, 32, 48, 64};

  std::vector<double> shell_true;   // per weight
  std::vector<double> mass_by_k;    // per lambda1 value
  double total_true = 0.0;
  int done = -1;
  double tail_abs = 0.0;
  int used_cap = 0;
  bool certified = false;
  for (int c : caps) {
    for (int w = done + 1; w <= c; ++w) {
      auto parts = partitions_of(w);
      std::vector<double> vals(parts.size());
      parallel_for(static_cast<long long>(parts.size()), threads, [&](long long i) {
        vals[static_cast<std::size_t>(i)] =
            lambda_marginal_weight(spec, parts[static_cast<std::size_t>(i)]);
      });
      double shell = 0.0;
      if (static_cast<int>(mass_by_k.size()) < w + 1) mass_by_k.resize(w + 1, 0.0);
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (vals[i] < 0.0) throw DiagnosticError("negative unnormalized mass");
        mass_by_k[static_cast<std::size_t>(part(parts[i], 1))] += vals[i];
        shell += vals[i];
      }
      shell_true.push_back(shell);
      total_true += shell;
    }
    done = c;
    tail_abs = certified_tail(spec, c, shell_true);
    used_cap = c;
    if (tail_abs / (total_true + tail_abs) < tol_tail) {
      certified = true;
      break;
    }
  }
  if (!certified)
    throw DiagnosticError("enumeration tail " +
                          format_g17(tail_abs / (total_true + tail_abs)) +
                          " exceeds the requested tolerance at cap " + std::to_string(used_cap));

  DistributionTable table;
  table.integer_arg = true;
  double z = total_true + tail_abs;
  double run = 0.0;
  mass_by_k.resize(static_cast<std::size_t>(used_cap) + 1, 0.0);
  for (int k = 0; k <= used_cap; ++k) {
    run += mass_by_k[static_cast<std::size_t>(k)];
    table.arg.push_back(k);
    table.cdf.push_back(run / z);
  }
  table.tail_bound = tail_abs / z;
  table.meta.emplace_back("enumeration_cap", std::to_string(used_cap));
  table.validate();
  return table;
}

ThetaShiftLaw theta_shift(double t, double uv) {
  require(t > 0.0, "shift parameter t must be positive");
  require(uv >= 0.0 && uv < 1.0, "shift law needs uv in [0,1)");
  ThetaShiftLaw law;
  law.t = t;
  law.uv = uv;
  if (uv == 0.0) {
    law.dmax = 0;
    law.pmf.assign(1, 1.0);
    return law;
  }
  auto term = [&](int d) {
    return std::pow(t, 2.0 * d) * std::pow(uv, 2.0 * static_cast<double>(d) * d);
  };
  int dmax = 1;
  while (true) {
    double peak = 0.0;
    for (int d = -dmax; d <= dmax; ++d) peak = std::max(peak, term(d));
    if (term(dmax) < 1e-18 * peak && term(-dmax) < 1e-18 * peak) break;
    ++dmax;
    if (dmax > 100000) throw DiagnosticError("shift law truncation did not close");
  }
  double norm = theta3(cdouble(t * t, 0.0), std::pow(uv, 4)).real();
  law.dmax = dmax;
  law.pmf.resize(2 * static_cast<std::size_t>(dmax) + 1);
  double sum = 0.0;
  for (int d = -dmax; d <= dmax; ++d) {
    law.pmf[static_cast<std::size_t>(d + dmax)] = term(d) / norm;
    sum += law.pmf[static_cast<std::size_t>(d + dmax)];
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw DiagnosticError("shift law mass " + format_g17(sum) + " is not 1");
  return law;
}

ThetaShiftLaw theta_shift(const MeasureSpec& spec) {
  spec.validate();
  return theta_shift(spec.t, spec.uv());
}

DistributionTable convolve_shift(const DistributionTable& table, const ThetaShiftLaw& law) {
  require(table.integer_arg, "shift convolution needs an integer lattice law");
  table.validate();
  int k0 = static_cast<int>(std::llround(table.arg.front()));
  int k1 = static_cast<int>(std::llround(table.arg.back()));
  DistributionTable out;
  out.integer_arg = true;
  out.tail_bound = table.tail_bound + 1e-14;
  out.meta = table.meta;
  out.meta.emplace_back("shift_t", format_g17(law.t));
  for (int m = k0 - 2 * law.dmax; m <= k1 + 2 * law.dmax; ++m) {
    double c = 0.0;
    for (int d = -law.dmax; d <= law.dmax; ++d) c += law.prob(d) * table.at(m - 2.0 * d);
    out.arg.push_back(m);
    out.cdf.push_back(c);
  }
  out.validate();
  return out;
}

DistributionTable deconvolve_shift(const DistributionTable& shifted, const ThetaShiftLaw& law) {
  require(shifted.integer_arg, "shift deconvolution needs an integer lattice law");
  shifted.validate();
  if (law.dmax == 0) return shifted;
  int m0 = static_cast<int>(std::llround(shifted.arg.front()));
  int m1 = static_cast<int>(std::llround(shifted.arg.back()));
  require(static_cast<int>(shifted.arg.size()) == m1 - m0 + 1,
          "shifted table must cover a contiguous integer range");
  int k0 = m0 + 2 * law.dmax;
  int k1 = m1 - 2 * law.dmax;
  require(k1 >= k0, "shifted table too narrow to deconvolve");
  int nk = k1 - k0 + 1, nm = m1 - m0 + 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nm, nk);
  Eigen::VectorXd rhs(nm);
  for (int mi = 0; mi < nm; ++mi) {
    int m = m0 + mi;
    double r = shifted.cdf[static_cast<std::size_t>(mi)];
    for (int d = -law.dmax; d <= law.dmax; ++d) {
      int k = m - 2 * d;
      if (k < k0)
        continue;  // below the window the unshifted law is 0
      else if (k > k1)
        r -= law.prob(d);  // above it the unshifted law is ~1
      else
        a(mi, k - k0) += law.prob(d);
    }
    rhs(mi) = r;
  }
  Eigen::VectorXd f = a.colPivHouseholderQr().solve(rhs);
  DistributionTable out;
  out.integer_arg = true;
  out.tail_bound = shifted.tail_bound + 1e-9;
  out.meta = shifted.meta;
  double prev = 0.0;
  for (int k = k0; k <= k1; ++k) {
    double vdn = std::min(1.0, std::max(prev, f(k - k0)));
    out.arg.push_back(k);
    out.cdf.push_back(vdn);
    prev = vdn;
  }
  out.validate();
  return out;
}

}  // namespace tielab
