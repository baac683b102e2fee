#pragma once

#include <complex>

namespace tielab {

using cdouble = std::complex<double>;

// Principal-branch log Gamma, accurate to ~1e-14 relative away from poles.
cdouble log_gamma(cdouble z);

// (x; q)_infty = prod_{l >= 0} (1 - x q^l), |q| < 1.
cdouble q_pochhammer(cdouble x, double q);

// finite product (x; q)_k = prod_{l = 0}^{k-1} (1 - x q^l)
cdouble q_pochhammer_n(cdouble x, double q, int k);

// theta_q(x) = (x; q)_infty (q/x; q)_infty
cdouble theta_q(cdouble x, double q);

// theta3(z; q) = sum_{d in Z} q^{d^2/2} z^d, evaluated by its series.
cdouble theta3(cdouble z, double q);

// product form (q; q)_infty * theta_q(-z sqrt(q)); kept as a cross-check.
cdouble theta3_by_product(cdouble z, double q);

// Small-r estimate of log (q^c; q)_infty with q = e^{-r}:
//   -pi^2/(6r) + (1/2 - c) log r + (1/2) log 2 pi - log Gamma(c).
cdouble log_qpoch_asymptotic(cdouble c, double r);

}  // namespace tielab
