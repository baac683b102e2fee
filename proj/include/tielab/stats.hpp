#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "tielab/errors.hpp"

namespace tielab {

// Right-continuous empirical CDF of a finite sample.
struct EmpiricalCdf {
  std::vector<double> sorted;

  explicit EmpiricalCdf(std::vector<double> samples) : sorted(std::move(samples)) {
    require(!sorted.empty(), "empirical cdf needs at least one sample");
    std::sort(sorted.begin(), sorted.end());
  }

  double operator()(double x) const {
    auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
    return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
  }

  // left limit F(x^-), needed for the sup over a continuous reference
  double below(double x) const {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
    return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
  }
};

// sup_x |F_emp(x) - F(x)| where F is any callable reference CDF.  The sup is
// attained at a sample point (from one side or the other) or at a reference
// knot, so the caller passes the knots to probe as well.
template <class Cdf>
double ks_distance(const EmpiricalCdf& emp, Cdf&& ref, const std::vector<double>& knots = {}) {
  double d = 0.0;
  for (double x : emp.sorted) {
    double f = ref(x);
    d = std::max(d, std::abs(emp(x) - f));
    d = std::max(d, std::abs(emp.below(x) - f));
  }
  for (double x : knots) {
    double f = ref(x);
    d = std::max(d, std::abs(emp(x) - f));
    d = std::max(d, std::abs(emp.below(x) - f));
  }
  return d;
}

// Total variation distance between two pmfs over the integers.
inline double tv_distance(const std::map<long long, double>& p, const std::map<long long, double>& q) {
  double sp = 0.0, sq = 0.0;
  for (auto& kv : p) sp += kv.second;
  for (auto& kv : q) sq += kv.second;
  require(std::abs(sp - 1.0) <= 1e-9, "first pmf is not normalized");
  require(std::abs(sq - 1.0) <= 1e-9, "second pmf is not normalized");
  double d = 0.0;
  auto ip = p.begin();
  auto iq = q.begin();
  while (ip != p.end() || iq != q.end()) {
    if (iq == q.end() || (ip != p.end() && ip->first < iq->first)) {
      d += std::abs(ip->second);
      ++ip;
    } else if (ip == p.end() || iq->first < ip->first) {
      d += std::abs(iq->second);
      ++iq;
    } else {
      d += std::abs(ip->second - iq->second);
      ++ip;
      ++iq;
    }
  }
  return 0.5 * d;
}

// Dvoretzky–Kiefer–Wolfowitz band half-width: with probability >= 1 - delta
// the empirical CDF of n iid draws stays within this of the truth.
inline double dkw_epsilon(long long n, double delta) {
  require(n >= 1 && delta > 0.0 && delta < 1.0, "dkw_epsilon needs n >= 1, delta in (0,1)");
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

// pmf of integer samples
inline std::map<long long, double> empirical_pmf(const std::vector<long long>& samples) {
  require(!samples.empty(), "empirical pmf needs at least one sample");
  std::map<long long, double> pmf;
  for (long long s : samples) pmf[s] += 1.0;
  for (auto& kv : pmf) kv.second /= static_cast<double>(samples.size());
  return pmf;
}

}  // namespace tielab
