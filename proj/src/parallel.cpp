#include "rhp/parallel.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rhp::par {

namespace {
std::atomic<int> g_threads{0};
}

void set_threads(int n) { g_threads.store(n > 0 ? n : 0); }

int threads() {
  const int n = g_threads.load();
  if (n > 0) return n;
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace detail {

void run_parallel(std::int64_t n, void (*trampoline)(void*, std::int64_t),
                  void* ctx) {
#ifdef _OPENMP
  const int nt = threads();
#pragma omp parallel for schedule(dynamic, 16) num_threads(nt)
  for (std::int64_t i = 0; i < n; ++i) trampoline(ctx, i);
#else
  for (std::int64_t i = 0; i < n; ++i) trampoline(ctx, i);
#endif
}

}  // namespace detail

}  // namespace rhp::par
