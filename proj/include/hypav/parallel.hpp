#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hypav {

// Calls fn(i) for every i in [0, count) on up to `threads` workers. Work items
// are claimed dynamically; callers write results into per-item slots and
// reduce them in index order afterwards, so the outcome never depends on the
// thread count. The first exception thrown by any item is rethrown.
template <class Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1U, threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(count);
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

// Fixed-size chunking for seeded Monte-Carlo loops: chunk c covers trials
// [c*size, min(total, (c+1)*size)) and draws from RNG stream c.
struct TrialChunks {
  std::uint64_t total = 0;
  std::uint64_t size = 4096;

  std::size_t count() const { return static_cast<std::size_t>((total + size - 1) / size); }
  std::uint64_t begin(std::size_t c) const { return static_cast<std::uint64_t>(c) * size; }
  std::uint64_t end(std::size_t c) const { return std::min(total, begin(c) + size); }
};

}  // namespace hypav
