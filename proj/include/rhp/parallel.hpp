#pragma once

#include <cstdint>
#include <type_traits>

namespace rhp::par {

// Process-wide worker cap for the parallel kernels. 0 restores the
// hardware default. Results never depend on this value, only wall time.
void set_threads(int n);
int threads();

namespace detail {
void run_parallel(std::int64_t n, void (*trampoline)(void*, std::int64_t), void* ctx);
}

// fn(i) for i = 0..n-1 across the worker pool. Only for slot-writing loops:
// iterations must touch disjoint state, so the result is identical to the
// serial loop below no matter the schedule or thread count.
template <class Fn>
void for_index(std::int64_t n, Fn&& fn) {
  using F = std::remove_reference_t<Fn>;
  auto call = [](void* ctx, std::int64_t i) { (*static_cast<F*>(ctx))(i); };
  detail::run_parallel(n, call, &fn);
}

// Serial reference for the kernel above; kept for tests and benchmarks.
template <class Fn>
void for_index_serial(std::int64_t n, Fn&& fn) {
  for (std::int64_t i = 0; i < n; ++i) fn(i);
}

}  // namespace rhp::par
