#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rfsum {

// Threading knobs shared by every reduction. Block boundaries depend only on
// block_size, never on threads, so results are bit-identical for any thread
// count.
struct ReduceOptions {
  unsigned threads = 1;
  std::uint64_t block_size = std::uint64_t{1} << 16;
};

// Runs task(i) for i in [0, count) on up to `threads` workers. Tasks are
// claimed in ascending order; callers store results per index and combine
// them afterwards in ascending order.
template <typename Task>
void parallel_for_index(std::size_t count, unsigned threads, Task&& task) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace rfsum
