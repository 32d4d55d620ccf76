#include "braidforge/parallel.hpp"

namespace braidforge {

namespace {
std::atomic<std::size_t> g_workers{0};
}

std::size_t worker_threads() {
  const std::size_t n = g_workers.load();
  if (n > 0) return n;
  return std::max(1u, std::thread::hardware_concurrency());
}

void set_worker_threads(std::size_t n) { g_workers.store(n); }

}  // namespace braidforge
