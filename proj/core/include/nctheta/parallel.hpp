#ifndef NCTHETA_PARALLEL_HPP
#define NCTHETA_PARALLEL_HPP

#include <cstdlib>
#include <thread>
#include <vector>

namespace nctheta {

// Worker count: hardware concurrency capped by NCTHETA_THREADS.
inline unsigned thread_cap() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("NCTHETA_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1 && static_cast<unsigned>(v) < hw) hw = static_cast<unsigned>(v);
    if (v == 1) hw = 1;
  }
  return hw;
}

// Index-parallel map with disjoint writes. Results are bit-exact for any
// worker count: fn(i) must write only to slot i of its output.
template <typename Fn>
void parallel_for_index(std::size_t n, Fn&& fn) {
  unsigned workers = thread_cap();
  if (workers <= 1 || n < 256) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk;
    std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace nctheta

#endif
