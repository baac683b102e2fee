#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "tielab/partition.hpp"

namespace tielab {

using BigInt = boost::multiprecision::cpp_int;

struct SkewShape {
  Partition outer;
  Partition inner;
};

BigInt factorial(int n);
BigInt binomial(long long n, long long k);

// Standard fillings of outer/inner: entries 1..N strictly increase along
// rows and down columns.  Exact.
BigInt count_syt(const Partition& outer, const Partition& inner);

// Column-strict fillings with alphabet {1..n}: weakly increasing rows,
// strictly increasing columns.  Exact; 0 when a column exceeds n.
BigInt count_ssyt(int n, const Partition& outer, const Partition& inner);

// eps^N * count_syt / N!  with N = |outer/inner|; 0 unless inner fits.
double plancherel_weight(double eps, const Partition& outer, const Partition& inner);

// q^N * count_ssyt(n, ...) as a double; 0 unless inner fits.
double geometric_weight(double q, int n, const Partition& outer, const Partition& inner);

}  // namespace tielab
