#pragma once

#include <cstddef>
#include <functional>

namespace landau {

/// Caps the worker count used by parallel loops. 0 restores the hardware
/// default. Thread count never changes results: every index writes only its
/// own slot and reductions run sequentially afterwards.
void set_max_threads(int n);
int max_threads();

namespace detail {
void parallel_for_impl(std::size_t n,
                       const std::function<void(std::size_t, std::size_t)>& run_chunk);
}

/// Runs fn(i) for i in [0, n), split into contiguous chunks across workers.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
  detail::parallel_for_impl(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
  });
}

}  // namespace landau
