#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "tielab/errors.hpp"

namespace tielab {

// splitmix64: tiny, well-mixed stream used only to derive engine seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// One engine per (seed, stream_index).  Sample i of a run always uses
// stream i, so results do not depend on how work is split across threads.
inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_index) {
  std::uint64_t s = seed + 0x9E3779B97F4A7C15ull * (stream_index + 1);
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

// Uniform on (0,1), explicitly built from the raw 64-bit draw so the value
// stream is identical across standard libraries.
inline double uniform01(std::mt19937_64& eng) {
  return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

// Geometric on {0,1,2,...} with P(X = k) = (1-z) z^k, sampled by inversion:
// k = floor(log U / log z).  Inversion gives the monotone coupling in z
// (same U, larger z, never a smaller k).
inline long long geom_sample(std::mt19937_64& eng, double z) {
  if (z <= 0.0) {
    (void)uniform01(eng);  // keep the draw stream aligned across parameter choices
    return 0;
  }
  require(z < 1.0, "geometric parameter must be < 1");
  double u = uniform01(eng);
  double k = std::floor(std::log(u) / std::log(z));
  if (k < 0) k = 0;
  return static_cast<long long>(k);
}

// Parity-tilted geometric on {0,1,2,...}:
//   P(X = k) = (1 - z^2) / (1 + b z) * b^(k mod 2) * z^k,  b in [0,1].
// Sampled by walking the CDF with one uniform (quantile transform).
inline long long geom_b_sample(std::mt19937_64& eng, double b, double z) {
  require(b >= 0.0 && b <= 1.0, "parity tilt must lie in [0,1]");
  if (z <= 0.0) {
    (void)uniform01(eng);
    return 0;
  }
  require(z < 1.0, "geometric parameter must be < 1");
  if (b == 0.0) {
    // only even values survive; X = 2 * Geom(z^2)
    return 2 * geom_sample(eng, z * z);
  }
  double u = uniform01(eng);
  double p = (1.0 - z * z) / (1.0 + b * z);
  double cum = p;
  long long k = 0;
  while (u > cum) {
    p *= (k % 2 == 0) ? z * b : z / b;
    cum += p;
    ++k;
    if (k > 100000000) throw DiagnosticError("geom_b_sample: CDF walk did not terminate");
  }
  return k;
}

}  // namespace tielab
