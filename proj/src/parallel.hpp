#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace plr {

/// Worker count: PLR_THREADS if set (clamped to [1, 256]), else the
/// hardware concurrency.
inline int thread_budget() {
  if (const char* env = std::getenv("PLR_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<int>(v > 256 ? 256 : v);
    return 1;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

/// Runs fn(block) for block = 0..nblocks-1 on up to thread_budget() threads.
/// Work units are indexed, so any reduction keyed by block index is
/// independent of the number of threads.
inline void parallel_for_blocks(std::size_t nblocks, const std::function<void(std::size_t)>& fn) {
  const int budget = thread_budget();
  if (budget <= 1 || nblocks <= 1) {
    for (std::size_t b = 0; b < nblocks; ++b) fn(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1);
      if (b >= nblocks || failed.load()) return;
      try {
        fn(b);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  const std::size_t nthreads = std::min<std::size_t>(budget, nblocks);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}
