#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lssl {

/// Number of worker threads to use for a request of `requested` (0 = hardware).
inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/// Runs fn(k) for k in [0, n) on up to `threads` workers (0 = hardware).
///
/// Work items are claimed dynamically, so fn must write only to slots owned by k.
/// The first exception thrown by any item is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::ptrdiff_t n, unsigned threads, Fn&& fn) {
  if (n <= 0) return;
  const unsigned workers = std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(n));
  if (workers <= 1) {
    for (std::ptrdiff_t k = 0; k < n; ++k) fn(k);
    return;
  }
  std::atomic<std::ptrdiff_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (std::ptrdiff_t k = next++; k < n; k = next++) {
      try {
        fn(k);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body);
  body();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace lssl
