#pragma once

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace boltzgap::detail {

/// Dynamic loop over [0, n). Each index is handled by exactly one thread and
/// writes only its own output, so results do not depend on the schedule.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  unsigned nt = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  nt = static_cast<unsigned>(std::min<std::size_t>(nt, n));
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < nt; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace boltzgap::detail
