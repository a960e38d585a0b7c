#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace dip {

// Static contiguous-chunk parallel for. Workers own disjoint index ranges, so
// callers that write results[i] for i in [begin,end) need no synchronization
// and outputs are identical for every worker count.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  if (n == 0) return;
  if (workers == 0) workers = std::thread::hardware_concurrency();
  if (workers <= 1 || n == 1) {
    fn(std::size_t{0}, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t begin = 0; begin < n; begin += chunk) {
    const std::size_t end = begin + chunk < n ? begin + chunk : n;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace dip
