#include "tielab/qseries.hpp"

#include <cmath>

#include "tielab/errors.hpp"

namespace tielab {

namespace {

// Lanczos approximation, g = 607/128 with 15 coefficients; good for about
// 1e-14 relative accuracy on Re z >= 1/2.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr double kLanczos[15] = {
    0.99999999999999709182,     57.156235665862923517,     -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,   0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3, -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4, 0.36899182659531622704e-5};

cdouble log_gamma_core(cdouble z) {
  // valid for Re z >= 1/2
  cdouble acc = kLanczos[0];
  for (int k = 1; k < 15; ++k) acc += kLanczos[k] / (z - 1.0 + static_cast<double>(k));
  cdouble t = z + kLanczosG - 0.5;
  return 0.5 * std::log(2.0 * M_PI) + (z - 0.5) * std::log(t) - t + std::log(acc);
}

// log sin(pi z) without overflow for large |Im z|
cdouble log_sin_pi(cdouble z) {
  // sin(pi z) = (e^{i pi z} - e^{-i pi z}) / (2i); pick the dominant exponential
  const cdouble ipi(0.0, M_PI);
  if (z.imag() > 0) {
    // e^{-i pi z} dominates
    return -ipi * z - std::log(cdouble(0.0, 2.0)) + std::log(1.0 - std::exp(2.0 * ipi * z));
  }
  return ipi * z - std::log(cdouble(0.0, 2.0)) + std::log(1.0 - std::exp(-2.0 * ipi * z));
}

}  // namespace

cdouble log_gamma(cdouble z) {
  if (z.real() >= 0.5) return log_gamma_core(z);
  // reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z)
  return std::log(M_PI) - log_sin_pi(z) - log_gamma_core(1.0 - z);
}

cdouble q_pochhammer(cdouble x, double q) {
  require(q >= 0.0 && q < 1.0, "q-pochhammer base must lie in [0,1)");
  if (x == cdouble(0.0)) return 1.0;
  if (q == 0.0) return 1.0 - x;
  // truncate once the remaining factors are within 1e-17 of 1
  double ax = std::abs(x);
  int L = 1;
  double qL = q;
  while (ax * qL / (1.0 - q) >= 1e-17) {
    qL *= q;
    ++L;
    if (L > 1000000) throw DiagnosticError("q_pochhammer: truncation did not close");
  }
  cdouble prod = 1.0;
  cdouble xq = x;
  for (int l = 0; l < L; ++l) {
    prod *= (1.0 - xq);
    xq *= q;
  }
  return prod;
}

cdouble q_pochhammer_n(cdouble x, double q, int k) {
  require(k >= 0, "finite q-pochhammer needs k >= 0");
  cdouble prod = 1.0;
  cdouble xq = x;
  for (int l = 0; l < k; ++l) {
    prod *= (1.0 - xq);
    xq *= q;
  }
  return prod;
}

cdouble theta_q(cdouble x, double q) {
  require(x != cdouble(0.0), "theta_q undefined at x = 0");
  return q_pochhammer(x, q) * q_pochhammer(q / x, q);
}

cdouble theta3(cdouble z, double q) {
  require(q >= 0.0 && q < 1.0, "theta3 base must lie in [0,1)");
  require(z != cdouble(0.0), "theta3 undefined at z = 0");
  if (q == 0.0) return 1.0;
  double qh = std::sqrt(q);
  // term(d+1)/term(d) = q^{d + 1/2} z = qh^{2d+1} z; symmetric for d < 0 with 1/z
  cdouble sum = 1.0;
  double peak = 1.0;
  cdouble tp = 1.0, tm = 1.0;
  double qpow = qh;  // qh^{2d+1} at current d
  for (int d = 0;; ++d) {
    tp *= qpow * z;
    tm *= qpow / z;
    sum += tp + tm;
    double m = std::max(std::abs(tp), std::abs(tm));
    peak = std::max(peak, m);
    qpow *= q;
    if (m < 1e-18 * peak) break;
    if (d > 100000) throw DiagnosticError("theta3: series did not converge");
  }
  return sum;
}

cdouble theta3_by_product(cdouble z, double q) {
  if (q == 0.0) return 1.0;
  double qh = std::sqrt(q);
  return q_pochhammer(q, q) * theta_q(-z * qh, q);
}

cdouble log_qpoch_asymptotic(cdouble c, double r) {
  require(r > 0.0, "asymptotic estimate needs r > 0");
  return -M_PI * M_PI / (6.0 * r) + (0.5 - c) * std::log(r) + 0.5 * std::log(2.0 * M_PI) -
         log_gamma(c);
}

}  // namespace tielab
