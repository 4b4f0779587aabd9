#ifndef SERIESCLS_SRC_PARALLEL_HPP
#define SERIESCLS_SRC_PARALLEL_HPP

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace seriescls::detail {

// Runs fn(0..count-1) on up to `jobs` threads (0 = hardware concurrency).
// Work items must write to disjoint slots; the first exception is rethrown
// after all workers finish.
inline void parallel_for(std::size_t count, int jobs,
                         const std::function<void(std::size_t)>& fn) {
  std::size_t workers = jobs <= 0 ? std::thread::hardware_concurrency()
                                  : static_cast<std::size_t>(jobs);
  if (workers == 0) workers = 1;
  if (workers > count) workers = count;
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace seriescls::detail

#endif  // SERIESCLS_SRC_PARALLEL_HPP
