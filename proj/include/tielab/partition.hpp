#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "tielab/errors.hpp"
#include "tielab/rng.hpp"

namespace tielab {

// A partition is its list of parts, weakly decreasing, no trailing zeros.
using Partition = std::vector<int>;

inline int part(const Partition& p, int i) {  // 1-indexed, 0 beyond the end
  return (i >= 1 && i <= static_cast<int>(p.size())) ? p[i - 1] : 0;
}

inline long long weight(const Partition& p) {
  return std::accumulate(p.begin(), p.end(), 0LL);
}

inline void normalize(Partition& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline bool is_partition(const Partition& p) {
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    if (p[i] < p[i + 1]) return false;
  return p.empty() || p.back() >= 1;
}

inline Partition conjugate(const Partition& p) {
  Partition c;
  if (p.empty()) return c;
  c.resize(p[0]);
  for (int j = 0; j < p[0]; ++j) {
    int cnt = 0;
    for (int x : p)
      if (x > j) ++cnt;
    c[j] = cnt;
  }
  return c;
}

// number of odd rows / odd columns
inline int odd_rows(const Partition& p) {
  int n = 0;
  for (int x : p) n += x % 2;
  return n;
}

inline int odd_cols(const Partition& p) { return odd_rows(conjugate(p)); }

// mu sits inside lambda row by row
inline bool contains(const Partition& lam, const Partition& mu) {
  if (mu.size() > lam.size()) return false;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (mu[i] > lam[i]) return false;
  return true;
}

// horizontal strip: lam/mu has at most one cell per column,
// i.e. lam_1 >= mu_1 >= lam_2 >= mu_2 >= ...
inline bool horizontal_strip(const Partition& lam, const Partition& mu) {
  if (!contains(lam, mu)) return false;
  for (int i = 1; i < static_cast<int>(lam.size()); ++i)
    if (part(mu, i) < part(lam, i + 1)) return false;
  return true;
}

// All partitions of w, lexicographically largest first.
inline std::vector<Partition> partitions_of(int w) {
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int, int)> rec = [&](int rem, int maxpart) {
    if (rem == 0) {
      out.push_back(cur);
      return;
    }
    for (int k = std::min(rem, maxpart); k >= 1; --k) {
      cur.push_back(k);
      rec(rem - k, k);
      cur.pop_back();
    }
  };
  rec(w, w);
  return out;
}

// All partitions of weight 0..max_weight, grouped by ascending weight and
// lexicographically largest first within a weight.
inline std::vector<Partition> enumerate_partitions(int max_weight) {
  std::vector<Partition> out;
  for (int w = 0; w <= max_weight; ++w) {
    auto shell = partitions_of(w);
    out.insert(out.end(), shell.begin(), shell.end());
  }
  return out;
}

inline long long count_partitions(int w) {
  // Euler recurrence with pentagonal numbers would be fancier; the direct
  // dp is plenty for the weights used here.
  std::vector<long long> dp(w + 1, 0);
  dp[0] = 1;
  for (int k = 1; k <= w; ++k)
    for (int r = k; r <= w; ++r) dp[r] += dp[r - k];
  return dp[w];
}

// Visit every mu with mu subseteq lam and, when floor_n >= 1 is given,
// mu_i >= lam_{i+floor_n} for all i (the staircase floor used by the
// finite-row measures).  floor_n == 0 means no floor.
template <class Visitor>
void for_each_subdiagram(const Partition& lam, int floor_n, Visitor&& visit) {
  Partition mu(lam.size(), 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == static_cast<int>(lam.size())) {
      Partition m(mu.begin(), mu.begin() + i);
      normalize(m);
      visit(m);
      return;
    }
    int hi = lam[i];
    if (i > 0) hi = std::min(hi, mu[i - 1]);
    int lo = 0;
    if (floor_n >= 1) lo = part(lam, i + 1 + floor_n);
    for (int v = lo; v <= hi; ++v) {
      mu[i] = v;
      rec(i + 1);
    }
    if (i < static_cast<int>(mu.size())) mu[i] = 0;
  };
  // If the floor already exceeds a row cap, there is nothing to visit.
  for (std::size_t i = 0; i < lam.size(); ++i) {
    int lo = (floor_n >= 1) ? part(lam, static_cast<int>(i) + 1 + floor_n) : 0;
    if (lo > lam[i]) return;
  }
  rec(0);
}

// Random partition under P(kappa) proportional to z^{|kappa|}, i.e. the
// measure with independent part-multiplicities m_j ~ Geom(z^j).  Parts of
// size > J are dropped once their total expected weight falls below tol.
inline Partition sample_q_partition(std::mt19937_64& eng, double z, double tol = 1e-12) {
  Partition out;
  if (z <= 0.0) return out;
  require(z < 1.0, "partition weight base must be < 1");
  int J = 1;
  while (true) {
    double zJ = std::pow(z, J);
    // expected weight carried by parts of size >= J, crude bound
    double tail = zJ / (1.0 - zJ) / (1.0 - z);
    if (tail < tol) break;
    ++J;
    if (J > 100000) throw DiagnosticError("sample_q_partition: cutoff did not close");
  }
  for (int j = J; j >= 1; --j) {
    long long m = geom_sample(eng, std::pow(z, j));
    for (long long c = 0; c < m; ++c) out.push_back(j);
  }
  std::sort(out.begin(), out.end(), std::greater<int>());
  return out;
}

}  // namespace tielab
