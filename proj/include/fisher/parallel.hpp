#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace fisher {

inline int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(0..n-1), splitting the index range over at most `threads` workers
/// (0 = hardware default). Callers own determinism: fn(i) must write only to
/// slot i of preallocated storage.
inline void parallel_for(long n, int threads, const std::function<void(long)>& fn) {
  if (threads <= 0) threads = default_threads();
  threads = static_cast<int>(std::min<long>(threads, n));
  if (threads <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([=, &fn]() {
      for (long i = t; i < n; i += threads) fn(i);
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace fisher
