#include "hvl/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hvl {

namespace {

std::atomic<long> g_override{-1};

std::size_t hardware_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace

std::size_t thread_count() {
  const long o = g_override.load(std::memory_order_relaxed);
  if (o >= 0) return o == 0 ? hardware_threads() : static_cast<std::size_t>(o);
  if (const char* env = std::getenv("HVL_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      // fall through to auto
    }
  }
  return hardware_threads();
}

void set_thread_count(std::optional<std::size_t> n) {
  g_override.store(n ? static_cast<long>(*n) : -1, std::memory_order_relaxed);
}

namespace detail {

void parallel_for_impl(std::size_t n,
                       const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t workers = std::min(thread_count(), n);
  if (workers <= 1) {
    body(0, n);
    return;
  }

  // Chunks are smaller than n / workers so uneven per-index cost balances.
  const std::size_t chunks = std::min(n, workers * 8);
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::size_t err_chunk = chunks;
  std::exception_ptr err;

  auto run = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= chunks) return;
      const std::size_t begin = n * c / chunks;
      const std::size_t end = n * (c + 1) / chunks;
      try {
        body(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (c < err_chunk) {
          err_chunk = c;
          err = std::current_exception();
        }
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace detail
}  // namespace hvl
