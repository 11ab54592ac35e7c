#pragma once

// Minimal fork-join helper.  Workers write to disjoint slots indexed
// by the loop counter, so results are deterministic regardless of the
// thread count.  COXREP_THREADS caps the pool.

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace coxrep {

inline unsigned max_threads() {
  if (const char* env = std::getenv("COXREP_THREADS")) {
    long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  unsigned workers = std::min<std::size_t>(max_threads(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace coxrep
