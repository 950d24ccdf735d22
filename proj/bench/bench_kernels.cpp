// Wall-time comparison of the parallel kernels against their serial
// reference implementations. Two hot paths dominate everything else in the
// toolkit: the O(N^2) grid convolution inside the renewal solver, and the
// embarrassingly parallel replication loop of the Monte Carlo experiments.
//
// The parallel kernels are required to be bit-identical to the serial ones,
// so each section checks that before reporting a time. A mismatch is a bug,
// not a rounding issue.
//
// Usage: rhp_bench [conv_nodes] [paths] [threads]

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include <rhp/grid.hpp>
#include <rhp/model.hpp>
#include <rhp/parallel.hpp>
#include <rhp/random.hpp>
#include <rhp/simulate.hpp>

namespace {

using clock_type = std::chrono::steady_clock;

double time_best_of(int rounds, double (*run)(const void*), const void* ctx) {
  double best = 1e300;
  for (int i = 0; i < rounds; ++i) {
    const auto t0 = clock_type::now();
    volatile double sink = run(ctx);
    (void)sink;
    const auto t1 = clock_type::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

struct ConvCtx {
  rhp::GridFunction a, b;
};

double run_conv_serial(const void* p) {
  const auto& c = *static_cast<const ConvCtx*>(p);
  return rhp::convolve_serial(c.a, c.b).values.back();
}

double run_conv_parallel(const void* p) {
  const auto& c = *static_cast<const ConvCtx*>(p);
  return rhp::convolve(c.a, c.b).values.back();
}

struct SimCtx {
  const rhp::InterarrivalModel* model;
  const rhp::ExcitationKernel* kernel;
  double horizon;
  std::int64_t paths;
  bool parallel;
};

double run_sim(const void* p) {
  const auto& c = *static_cast<const SimCtx*>(p);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(c.paths));
  auto body = [&](std::int64_t r) {
    rhp::RandomStream rng(20260818, static_cast<std::uint64_t>(r));
    const auto path =
        rhp::simulate_rhp_cluster(*c.model, *c.kernel, c.horizon, rng);
    counts[static_cast<std::size_t>(r)] =
        static_cast<std::int64_t>(path.times.size());
  };
  if (c.parallel)
    rhp::par::for_index(c.paths, body);
  else
    rhp::par::for_index_serial(c.paths, body);
  std::int64_t total = 0;
  for (auto n : counts) total += n;
  return static_cast<double>(total);
}

void report(const char* name, double serial_ms, double parallel_ms) {
  std::printf("%-24s %10.1f ms %10.1f ms %9.2fx\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t nodes = 20000;
  std::int64_t paths = 2000;
  if (argc > 1) nodes = static_cast<std::size_t>(std::strtoull(argv[1], nullptr, 10));
  if (argc > 2) paths = std::strtoll(argv[2], nullptr, 10);
  if (argc > 3) rhp::par::set_threads(std::atoi(argv[3]));

  std::printf("threads: %d\n", rhp::par::threads());
  std::printf("%-24s %13s %13s %10s\n", "kernel", "serial", "parallel",
              "speedup");

  // Convolution operands shaped like the solver's: a decaying kernel against
  // a growing renewal-type curve.
  ConvCtx conv;
  conv.a.step = conv.b.step = 0.01;
  conv.a.values.resize(nodes);
  conv.b.values.resize(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    const double t = 0.01 * static_cast<double>(i);
    conv.a.values[i] = 0.5 * std::exp(-0.5 * t);
    conv.b.values[i] = 1.0 + 2.0 * t;
  }
  const auto ref = rhp::convolve_serial(conv.a, conv.b);
  const auto par = rhp::convolve(conv.a, conv.b);
  for (std::size_t i = 0; i < ref.size(); ++i)
    if (ref.values[i] != par.values[i]) {
      std::fprintf(stderr, "convolve mismatch at node %zu\n", i);
      return 1;
    }
  const double conv_s = time_best_of(3, run_conv_serial, &conv);
  const double conv_p = time_best_of(3, run_conv_parallel, &conv);
  char label[64];
  std::snprintf(label, sizeof label, "convolve (%zu nodes)", nodes);
  report(label, conv_s, conv_p);

  // Replication loop at the scale of one experiment batch.
  const auto model = rhp::parse_model("exp:1");
  const auto kernel = rhp::parse_kernel("expk:0.5,1");
  SimCtx sim{&model, &kernel, 100.0, paths, false};
  SimCtx simp = sim;
  simp.parallel = true;
  if (run_sim(&sim) != run_sim(&simp)) {
    std::fprintf(stderr, "replication loop mismatch\n");
    return 1;
  }
  const double sim_s = time_best_of(3, run_sim, &sim);
  const double sim_p = time_best_of(3, run_sim, &simp);
  std::snprintf(label, sizeof label, "paths (%lld x T=100)",
                static_cast<long long>(paths));
  report(label, sim_s, sim_p);

  return 0;
}
