#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <thread>
#include <vector>

namespace saw {

// Worker cap: SA_WITNESS_THREADS when set to a positive integer, otherwise
// the hardware concurrency clamped to 8. Unparseable values fall back to
// the default rather than erroring.
inline unsigned thread_budget() {
  if (const char* env = std::getenv("SA_WITNESS_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) {
      return static_cast<unsigned>(std::min(v, 64L));
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? std::min(hw, 8u) : 1u;
}

// Runs fn(i) for i in [0, n) across contiguous chunks, one thread each.
// fn must tolerate concurrent calls on distinct indices and must not throw.
// Results must be written to per-index slots so the output is independent
// of the schedule.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  std::size_t workers = std::min<std::size_t>(thread_budget(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t t = 0; t < workers; ++t) {
    std::size_t lo = t * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace saw
