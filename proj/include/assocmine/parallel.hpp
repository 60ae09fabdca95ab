#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace assocmine {

// Splits [0, count) into contiguous ranges and runs fn on each, possibly on
// worker threads. Callers must write results to disjoint slots (or reduce
// exactly associative values) so the outcome does not depend on the split;
// that is what keeps multi-threaded runs byte-identical to --threads 1.
inline void parallel_for(std::size_t count, int threads,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  if (count == 0) return;
  std::size_t workers = threads > 1 ? static_cast<std::size_t>(threads) : 1;
  workers = std::min(workers, count);
  if (workers == 1) {
    fn(0, count);
    return;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace assocmine
