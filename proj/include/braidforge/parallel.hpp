#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "braidforge/tensor.hpp"

namespace braidforge {

/// Worker count used by verification drivers (default: hardware concurrency).
std::size_t worker_threads();
void set_worker_threads(std::size_t n);

/// Smallest i in [0, count) with fails(i), searched by all workers. The
/// answer does not depend on the worker count.
template <class Fails>
std::optional<Index> parallel_first_failure(Index count, Fails&& fails) {
  constexpr Index kNone = ~Index{0};
  const std::size_t workers =
      static_cast<std::size_t>(std::min<Index>(std::max<std::size_t>(worker_threads(), 1), std::max<Index>(count, 1)));
  if (workers <= 1 || count < 64) {
    for (Index i = 0; i < count; ++i)
      if (fails(i)) return i;
    return std::nullopt;
  }
  std::atomic<Index> best{kNone};
  std::atomic<Index> next{0};
  constexpr Index kBlock = 32;
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    try {
      for (;;) {
        const Index start = next.fetch_add(kBlock);
        if (start >= count || start >= best.load()) return;
        const Index stop = std::min(count, start + kBlock);
        for (Index i = start; i < stop && i < best.load(); ++i) {
          if (fails(i)) {
            Index cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
            break;
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      best.store(0);
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  if (best.load() == kNone) return std::nullopt;
  return best.load();
}

}  // namespace braidforge
