#pragma once
#include <functional>
#include <thread>
#include <vector>

namespace oslash {

// Runs fn(i) for i in [0, n) across up to `threads` workers in fixed-stride
// chunks. Callers own determinism: either write to disjoint slots or merge
// per-worker results in worker order afterwards.
inline void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads < 1) threads = 1;
  if (threads == 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  int workers = std::min(threads, n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int wkr = 0; wkr < workers; ++wkr)
    pool.emplace_back([&, wkr] {
      for (int i = wkr; i < n; i += workers) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace oslash
