#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace bzm {

/// Worker cap: BZM_THREADS when set and positive, else the hardware count.
inline int thread_budget() {
  if (const char* env = std::getenv("BZM_THREADS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (...) {
    }
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

/// Runs fn(i) for i in [0, n). Callers write into index-addressed slots so
/// results do not depend on scheduling. The first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(thread_budget()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace bzm
