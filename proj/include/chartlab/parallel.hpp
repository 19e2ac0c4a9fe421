#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace chartlab {

// Process-wide worker cap set by the CLI --threads flag. 0 means "use
// hardware concurrency".
void set_max_threads(unsigned n);
unsigned max_threads();

// Runs fn(i) for i in [begin, end) across up to max_threads() workers.
// Each index is handled exactly once and workers write to disjoint slots,
// so results do not depend on the schedule.
template <typename Fn>
void parallel_for(std::size_t begin, std::size_t end, Fn&& fn) {
  const std::size_t n = end > begin ? end - begin : 0;
  if (n == 0) return;
  unsigned workers = max_threads();
  if (workers <= 1 || n == 1) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  if (workers > n) workers = static_cast<unsigned>(n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t lo = begin + static_cast<std::size_t>(w) * chunk;
    const std::size_t hi = lo + chunk < end ? lo + chunk : end;
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace chartlab
