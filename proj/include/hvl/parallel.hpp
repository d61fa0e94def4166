#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>

namespace hvl {

/// Worker count used by parallel_for. Reads HVL_THREADS (0 or unset means
/// hardware concurrency) unless an override is installed.
std::size_t thread_count();

/// Process-wide override of HVL_THREADS; std::nullopt restores the env value.
void set_thread_count(std::optional<std::size_t> n);

namespace detail {
void parallel_for_impl(std::size_t n,
                       const std::function<void(std::size_t, std::size_t)>& body);
}

/// Calls fn(i) for i in [0, n). Work is split into contiguous chunks; each
/// index is visited exactly once, so callers that write to slot i get results
/// independent of the thread count. If any call throws, the exception from the
/// lowest failing index is rethrown after all workers finish.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  detail::parallel_for_impl(n, [&fn](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
  });
}

}  // namespace hvl
