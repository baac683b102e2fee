#include "tielab/tableaux.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

namespace tielab {

using boost::multiprecision::cpp_rational;

namespace {

std::mutex cache_mutex;

BigInt factorial_nolock(int n) {
  static std::vector<BigInt> cache = {1};
  while (static_cast<int>(cache.size()) <= n) cache.push_back(cache.back() * cache.size());
  return cache[n];
}

BigInt binomial_nolock(long long nn, long long kk) {
  if (kk < 0 || kk > nn || nn < 0) return 0;
  kk = std::min(kk, nn - kk);
  BigInt num = 1, den = 1;
  for (long long i = 0; i < kk; ++i) {
    num *= nn - i;
    den *= i + 1;
  }
  return num / den;
}

// rows of a skew component, columns shifted to start at 0
using ShapeKey = std::vector<std::pair<int, int>>;  // (outer_i, inner_i)

// Split the shape into row blocks that share no column: rows i and i+1
// interact iff inner_i < outer_{i+1}.
std::vector<ShapeKey> components(const Partition& outer, const Partition& inner) {
  std::vector<ShapeKey> out;
  ShapeKey cur;
  int m = static_cast<int>(outer.size());
  for (int i = 0; i < m; ++i) {
    int o = outer[i], in = part(inner, i + 1);
    if (o == in) {  // empty row separates components
      if (!cur.empty()) {
        out.push_back(cur);
        cur.clear();
      }
      continue;
    }
    cur.emplace_back(o, in);
    bool splits = (i + 1 >= m) || (in >= part(outer, i + 2));
    if (splits) {
      out.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(cur);
  // normalize the column offset of each component
  for (auto& comp : out) {
    int c0 = comp.back().second;  // inner is weakly decreasing within the block
    for (auto& row : comp) {
      row.first -= c0;
      row.second -= c0;
    }
  }
  return out;
}

int component_cells(const ShapeKey& comp) {
  int n = 0;
  for (auto& row : comp) n += row.first - row.second;
  return n;
}

// standard fillings of one connected component: hook lengths for straight
// shapes, otherwise N! * det( 1 / (outer_i - i - inner_j + j)! ) by exact
// rational elimination.
BigInt syt_component(const ShapeKey& comp) {
  int m = static_cast<int>(comp.size());
  int N = component_cells(comp);
  bool straight = true;
  for (auto& row : comp)
    if (row.second != 0) straight = false;
  if (straight) {
    Partition lam;
    for (auto& row : comp) lam.push_back(row.first);
    Partition conj = conjugate(lam);
    BigInt denom = 1;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < lam[i]; ++j) denom *= (lam[i] - j) + (conj[j] - i) - 1;
    return factorial_nolock(N) / denom;
  }
  std::vector<std::vector<cpp_rational>> M(m, std::vector<cpp_rational>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      long long e = comp[i].first - (i + 1) - comp[j].second + (j + 1);
      M[i][j] = (e < 0) ? cpp_rational(0) : cpp_rational(1, factorial_nolock(static_cast<int>(e)));
    }
  cpp_rational det = 1;
  for (int k = 0; k < m; ++k) {
    int piv = -1;
    for (int i = k; i < m; ++i)
      if (M[i][k] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return 0;
    if (piv != k) {
      std::swap(M[piv], M[k]);
      det = -det;
    }
    det *= M[k][k];
    for (int i = k + 1; i < m; ++i) {
      cpp_rational f = M[i][k] / M[k][k];
      for (int j = k; j < m; ++j) M[i][j] -= f * M[k][j];
    }
  }
  cpp_rational result = det * factorial_nolock(N);
  return numerator(result) / denominator(result);
}

// column-strict count for one component:
// det C(n - 1 + outer_i - i - inner_j + j, outer_i - i - inner_j + j),
// exact Bareiss elimination over the integers.
BigInt ssyt_component(int n, const ShapeKey& comp) {
  int m = static_cast<int>(comp.size());
  std::vector<std::vector<BigInt>> M(m, std::vector<BigInt>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      long long e = comp[i].first - (i + 1) - comp[j].second + (j + 1);
      M[i][j] = binomial_nolock(n - 1 + e, e);
    }
  BigInt sign = 1, prev = 1;
  for (int k = 0; k + 1 < m; ++k) {
    if (M[k][k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < m; ++i)
        if (M[i][k] != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      std::swap(M[piv], M[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < m; ++i)
      for (int j = k + 1; j < m; ++j) M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
    prev = M[k][k];
  }
  return sign * M[m - 1][m - 1];
}

std::map<ShapeKey, BigInt> syt_cache;
std::map<std::pair<int, ShapeKey>, BigInt> ssyt_cache;

}  // namespace

BigInt factorial(int n) {
  require(n >= 0, "factorial of a negative number");
  std::lock_guard<std::mutex> lk(cache_mutex);
  return factorial_nolock(n);
}

BigInt binomial(long long n, long long k) { return binomial_nolock(n, k); }

BigInt count_syt(const Partition& outer, const Partition& inner) {
  require(is_partition(outer) && is_partition(inner), "shapes must be partitions");
  require(contains(outer, inner), "inner shape must fit inside outer");
  auto comps = components(outer, inner);
  int total = 0;
  for (auto& c : comps) total += component_cells(c);
  if (total == 0) return 1;
  std::lock_guard<std::mutex> lk(cache_mutex);
  BigInt result = factorial_nolock(total);
  for (auto& c : comps) {
    auto it = syt_cache.find(c);
    BigInt f;
    if (it != syt_cache.end()) {
      f = it->second;
    } else {
      f = syt_component(c);
      syt_cache.emplace(c, f);
    }
    // interleaving entries across components: multinomial times the product
    result = result / factorial_nolock(component_cells(c)) * f;
  }
  return result;
}

BigInt count_ssyt(int n, const Partition& outer, const Partition& inner) {
  require(n >= 0, "alphabet size must be nonnegative");
  require(is_partition(outer) && is_partition(inner), "shapes must be partitions");
  require(contains(outer, inner), "inner shape must fit inside outer");
  if (n == 0) return weight(outer) == weight(inner) ? 1 : 0;
  auto comps = components(outer, inner);
  std::lock_guard<std::mutex> lk(cache_mutex);
  BigInt result = 1;
  for (auto& c : comps) {
    auto key = std::make_pair(n, c);
    auto it = ssyt_cache.find(key);
    BigInt f;
    if (it != ssyt_cache.end()) {
      f = it->second;
    } else {
      f = ssyt_component(n, c);
      ssyt_cache.emplace(key, f);
    }
    if (f == 0) return 0;
    result *= f;
  }
  return result;
}

double plancherel_weight(double eps, const Partition& outer, const Partition& inner) {
  if (!contains(outer, inner)) return 0.0;
  long long N = weight(outer) - weight(inner);
  if (N == 0) return 1.0;
  BigInt f = count_syt(outer, inner);
  if (f == 0) return 0.0;
  cpp_rational ratio(f, factorial(static_cast<int>(N)));
  return std::pow(eps, static_cast<double>(N)) * static_cast<double>(ratio);
}

double geometric_weight(double q, int n, const Partition& outer, const Partition& inner) {
  if (!contains(outer, inner)) return 0.0;
  long long N = weight(outer) - weight(inner);
  BigInt f = count_ssyt(n, outer, inner);
  if (f == 0) return 0.0;
  return std::pow(q, static_cast<double>(N)) * static_cast<double>(f);
}

}  // namespace tielab
