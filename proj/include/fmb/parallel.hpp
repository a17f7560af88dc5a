#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fmb {

// Worker count: FMB_THREADS when set and positive, else hardware concurrency.
inline int thread_count() {
  if (const char* env = std::getenv("FMB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Calls body(i) for i in [0, count). Each index is handled exactly once, so
// results written to per-index slots are independent of scheduling. The
// first exception is rethrown after all workers finish.
namespace detail {
inline thread_local bool in_worker = false;
}

// Calls made from inside a worker run serially.
template <typename F>
void parallel_for(int count, const F& body) {
  const int workers = detail::in_worker ? 1 : std::min(thread_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      detail::in_worker = true;
      for (int i = w; i < count; i += workers) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace fmb
