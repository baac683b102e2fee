#pragma once

#include <cmath>
#include <vector>

#include "tielab/errors.hpp"

namespace tielab {

struct Quadrature {
  std::vector<double> x;  // nodes
  std::vector<double> w;  // weights
};

// Gauss–Legendre rule on [-1, 1] by Newton iteration on P_m, seeded with the
// Chebyshev-angle approximation for the roots.
inline Quadrature gauss_legendre(int m) {
  require(m >= 1, "quadrature order must be >= 1");
  Quadrature q;
  q.x.resize(m);
  q.w.resize(m);
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // evaluate P_m and P'_m by the three-term recurrence
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.x[i] = x;
    q.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return q;
}

inline Quadrature gauss_legendre_on(double a, double b, int m) {
  Quadrature q = gauss_legendre(m);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < m; ++i) {
    q.x[i] = mid + half * q.x[i];
    q.w[i] *= half;
  }
  return q;
}

// Composite rule: consecutive panels of width `panel` covering [a, b],
// `per_panel` nodes each.  The last panel is shrunk to end exactly at b.
inline Quadrature composite_gauss_legendre(double a, double b, double panel, int per_panel) {
  require(b > a && panel > 0.0, "bad composite quadrature window");
  Quadrature out;
  Quadrature base = gauss_legendre(per_panel);
  double lo = a;
  while (lo < b - 1e-12) {
    double hi = std::min(b, lo + panel);
    double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (int i = 0; i < per_panel; ++i) {
      out.x.push_back(mid + half * base.x[i]);
      out.w.push_back(half * base.w[i]);
    }
    lo = hi;
  }
  return out;
}

}  // namespace tielab
