#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace nlcf {

// Number of worker threads: NLCF_WORKERS environment override, otherwise the
// hardware concurrency, clamped to [1, 64]. Worker count must never change
// computed values; parallel loops below only partition independent per-index
// work and each index writes its own output slot.
inline int worker_count() {
  if (const char* env = std::getenv("NLCF_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<int>(v > 64 ? 64 : v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  return static_cast<int>(hw > 64 ? 64 : hw);
}

// Static block partition of [0, n) over the worker threads. f(i) must be
// independent across indices and write only to slots owned by index i, so the
// result is byte-identical for every worker count.
template <class F>
void parallel_for(long n, F&& f) {
  if (n <= 0) return;
  int workers = worker_count();
  if (workers <= 1 || n == 1) {
    for (long i = 0; i < n; ++i) f(i);
    return;
  }
  if (static_cast<long>(workers) > n) workers = static_cast<int>(n);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  long chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    long lo = w * chunk;
    long hi = lo + chunk < n ? lo + chunk : n;
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &f] {
      for (long i = lo; i < hi; ++i) f(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace nlcf
