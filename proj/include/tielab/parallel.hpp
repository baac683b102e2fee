#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "tielab/errors.hpp"

namespace tielab {

inline int default_threads() {
  if (const char* env = std::getenv("TIELAB_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Static block partition of [0, count).  Each index is processed exactly once
// and the assignment depends only on (count, threads), so any output written
// to slot i is identical regardless of the thread count.
template <class Body>
void parallel_for(long long count, int threads, Body&& body) {
  if (count <= 0) return;
  if (threads < 1) threads = 1;
  if (threads > count) threads = static_cast<int>(count);
  if (threads == 1) {
    for (long long i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  std::exception_ptr first_error = nullptr;
  std::mutex guard;
  long long chunk = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    long long lo = t * chunk;
    long long hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (long long i = lo; i < hi; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(guard);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace tielab
