#include "landau/parallel.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace landau {

namespace {
std::atomic<int> g_max_threads{0};
}

void set_max_threads(int n) { g_max_threads.store(n < 0 ? 0 : n); }

int max_threads() {
  int n = g_max_threads.load();
  if (n > 0) return n;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

namespace detail {

void parallel_for_impl(std::size_t n,
                       const std::function<void(std::size_t, std::size_t)>& run_chunk) {
  if (n == 0) return;
  std::size_t workers = std::size_t(max_threads());
  if (workers > n) workers = n;
  if (workers <= 1) {
    run_chunk(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::size_t base = n / workers, extra = n % workers, begin = 0;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t len = base + (w < extra ? 1 : 0);
    pool.emplace_back(run_chunk, begin, begin + len);
    begin += len;
  }
  for (auto& th : pool) th.join();
}

}  // namespace detail
}  // namespace landau
