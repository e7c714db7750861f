#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace helirad {

//! Worker count: HELIRAD_THREADS if set and positive, otherwise the hardware
//! concurrency (HELIRAD_THREADS=0 also means "auto").
inline unsigned thread_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char *env = std::getenv("HELIRAD_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0)
        return static_cast<unsigned>(v);
    } catch (const std::exception &) {
    }
  }
  return hw;
}

//! Runs f(i) for i in [0, n) over contiguous blocks. Each index is written by
//! exactly one worker, so results do not depend on the thread count. The
//! first exception thrown by any worker is rethrown on the calling thread.
template <class F> void parallel_for(std::size_t n, F &&f, unsigned threads = 0) {
  if (threads == 0)
    threads = thread_count();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      f(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::size_t block = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t lo = t * block, hi = std::min(n, lo + block);
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i)
          f(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure)
          failure = std::current_exception();
      }
    });
  }
  for (auto &th : pool)
    th.join();
  if (failure)
    std::rethrow_exception(failure);
}

} // namespace helirad
