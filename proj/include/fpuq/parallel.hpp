#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace fpuq {

/// Splits [0, n) into one contiguous chunk per worker and runs body(worker, begin, end)
/// on each. Work is assigned by index, never by arrival order, so any result written
/// into per-index or per-worker storage is identical for every job count. `setup`
/// runs once with the worker count before any thread starts. Returns the worker count.
inline unsigned parallel_for(std::uint64_t n, unsigned jobs,
                             const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& body,
                             const std::function<void(unsigned)>& setup = {}) {
  unsigned workers = jobs != 0 ? jobs : std::thread::hardware_concurrency();
  if (workers == 0) workers = 1;
  if (n < workers) workers = n > 0 ? static_cast<unsigned>(n) : 1;
  if (setup) setup(workers);
  if (n == 0) return workers;
  if (workers == 1) {
    body(0, 0, n);
    return workers;
  }
  const std::uint64_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = w * chunk;
    const std::uint64_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, w, begin, end] { body(w, begin, end); });
  }
  for (auto& t : pool) t.join();
  return workers;
}

}  // namespace fpuq
