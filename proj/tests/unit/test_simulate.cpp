#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "rhp/simulate.hpp"
#include "rhp/stats.hpp"

using namespace rhp;

namespace {

const InterarrivalModel kExp1 = InterarrivalModel::exponential(1.0);
const ExcitationKernel kHalf = ExcitationKernel::exponential(0.5, 1.0);

PointProcessPath hand_path() {
  PointProcessPath p;
  p.times = {0.0, 1.0, 2.0, 3.0};
  p.flags = {0, 1, 0, 1};
  p.horizon = 4.0;
  return p;
}

void check_path_invariants(const PointProcessPath& p) {
  REQUIRE(!p.times.empty());
  CHECK(p.times.front() == 0.0);
  CHECK(p.flags.front() == 0);
  REQUIRE(p.times.size() == p.flags.size());
  for (std::size_t i = 1; i < p.times.size(); ++i) {
    CHECK(p.times[i] > p.times[i - 1]);
    CHECK(p.times[i] <= p.horizon);
  }
}

}  // namespace

TEST_SUITE("simulate") {

TEST_CASE("count and immigrant lookup on a hand-built path") {
  const auto p = hand_path();
  CHECK(count(p, 0.0) == 1);
  CHECK(count(p, 2.5) == 3);
  CHECK(count(p, 4.0) == 4);
  CHECK_THROWS_AS(count(p, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(count(p, 4.1), std::invalid_argument);

  CHECK(last_immigrant_index(p, 0.0) == 0);
  CHECK(last_immigrant_index(p, 0.5) == 0);
  CHECK(last_immigrant_index(p, 1.5) == 0);  // offspring at 1 does not count
  CHECK(last_immigrant_index(p, 2.0) == 2);
  CHECK(last_immigrant_index(p, 3.7) == 2);
  CHECK_THROWS_AS(last_immigrant_index(p, -1.0), std::invalid_argument);
}

TEST_CASE("intensity sums hazard and kernel contributions") {
  const auto p = hand_path();
  const auto model = InterarrivalModel::exponential(2.0);

  // zero kernel: intensity is the bare hazard everywhere
  const auto none = ExcitationKernel::exponential(0.0, 1.0);
  CHECK(intensity_at(p, model, none, 0.7) == doctest::Approx(2.0));
  CHECK(intensity_at(p, model, none, 3.9) == doctest::Approx(2.0));

  const double t = 2.5;
  const double expected =
      2.0 + 0.5 * (std::exp(-2.5) + std::exp(-1.5) + std::exp(-0.5));
  CHECK(intensity_at(p, model, kHalf, t) == doctest::Approx(expected).epsilon(1e-12));

  // points at or after t are excluded
  const double at2 = 2.0 + 0.5 * (std::exp(-2.0) + std::exp(-1.0));
  CHECK(intensity_at(p, model, kHalf, 2.0) == doctest::Approx(at2).epsilon(1e-12));
}

TEST_CASE("renewal stream structure and rate") {
  RandomStream rng(42, 0);
  const auto s = simulate_renewal(kExp1, 100.0, rng);
  REQUIRE(!s.empty());
  CHECK(s.front() == 0.0);
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] > s[i - 1]);
  CHECK(s.back() <= 100.0);

  // mean count over replications: E = 1 + horizon * rate for Poisson arrivals
  double total = 0.0;
  for (int r = 0; r < 200; ++r) {
    RandomStream rr(42, static_cast<std::uint64_t>(r));
    total += static_cast<double>(simulate_renewal(kExp1, 100.0, rr).size());
  }
  CHECK(std::abs(total / 200.0 - 101.0) < 3.0);
  CHECK_THROWS_AS(simulate_renewal(kExp1, 0.0, rng), std::invalid_argument);
}

TEST_CASE("cluster size moments match the branching formulas") {
  // total progeny of one ancestor: mean 1/(1-a), variance a/(1-a)^3
  RandomStream rng(42, 0);
  const int n = 10000;
  std::vector<double> sizes(n);
  for (int i = 0; i < n; ++i) {
    const auto c = simulate_cluster(kHalf, 0.0, 1e6, rng);
    sizes[i] = 1.0 + static_cast<double>(c.descendants.size());
    CHECK(c.escaped == 0);
  }
  const auto mv = sample_mean_var(sizes);
  CHECK(std::abs(mv.mean - 2.0) < 0.06);
  CHECK(std::abs(mv.variance - 4.0) < 0.4);
}

TEST_CASE("cluster children beyond the horizon are counted, not kept") {
  RandomStream rng(8, 0);
  double escaped = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const auto c = simulate_cluster(kHalf, 10.0, 10.0, rng);
    CHECK(c.descendants.empty());  // every child lands past the horizon
    escaped += static_cast<double>(c.escaped);
  }
  // ancestor at the horizon: escapees are its direct children, Poisson(1/2)
  CHECK(std::abs(escaped / n - 0.5) < 0.02);
}

TEST_CASE("cluster engine produces valid paths with both kernels") {
  for (const auto& kernel :
       {kHalf, ExcitationKernel::uniform(0.5, 1.0),
        ExcitationKernel::exponential(0.0, 1.0)}) {
    RandomStream rng(42, 1);
    const auto p = simulate_rhp_cluster(kExp1, kernel, 200.0, rng);
    check_path_invariants(p);
    CHECK(p.engine == Engine::Cluster);
  }
  // heavy-tailed interarrivals are fine for the cluster construction
  RandomStream rng(42, 2);
  const auto heavy = InterarrivalModel::weibull(1.0, 0.5);
  check_path_invariants(simulate_rhp_cluster(heavy, kHalf, 50.0, rng));
}

TEST_CASE("thinning engine produces valid paths and rejects unbounded hazards") {
  for (const auto& kernel : {kHalf, ExcitationKernel::uniform(0.5, 1.0)}) {
    for (const auto& model : {kExp1, InterarrivalModel::weibull(3.0, 2.0)}) {
      RandomStream rng(42, 3);
      const auto p = simulate_rhp_thinning(model, kernel, 200.0, rng);
      check_path_invariants(p);
      CHECK(p.engine == Engine::Thinning);
      CHECK(p.escaped_count == 0);
    }
  }
  RandomStream rng(42, 4);
  const auto heavy = InterarrivalModel::weibull(1.0, 0.5);
  CHECK_THROWS_AS(simulate_rhp_thinning(heavy, kHalf, 50.0, rng),
                  std::invalid_argument);
}

TEST_CASE("paths are a pure function of seed and stream") {
  for (Engine engine : {Engine::Cluster, Engine::Thinning}) {
    RandomStream a(7, 11), b(7, 11);
    const auto pa = simulate_path(engine, kExp1, kHalf, 150.0, a);
    const auto pb = simulate_path(engine, kExp1, kHalf, 150.0, b);
    REQUIRE(pa.times.size() == pb.times.size());
    for (std::size_t i = 0; i < pa.times.size(); ++i) {
      CHECK(pa.times[i] == pb.times[i]);
      CHECK(pa.flags[i] == pb.flags[i]);
    }
    CHECK(pa.escaped_count == pb.escaped_count);
  }
}

TEST_CASE("both engines reproduce the closed-form mean count") {
  // E[N(t)] = 2t + exp(-t/2) for unit-rate exponential arrivals with the
  // alpha=1/2, beta=1 kernel
  const double T = 30.0;
  const double target = oracle::mean_count_exp_half(T);
  for (Engine engine : {Engine::Cluster, Engine::Thinning}) {
    const int reps = 400;
    std::vector<double> counts(reps);
    for (int r = 0; r < reps; ++r) {
      RandomStream rng(42, static_cast<std::uint64_t>(r));
      counts[r] =
          static_cast<double>(simulate_path(engine, kExp1, kHalf, T, rng).times.size());
    }
    const auto mv = sample_mean_var(counts);
    const double se = std::sqrt(mv.variance / reps);
    CHECK(std::abs(mv.mean - target) < 3.0 * se);
  }
}

TEST_CASE("integrated hazard matches the background count in expectation") {
  // the compensator of the background stream over [0, T]
  const auto model = InterarrivalModel::weibull(3.0, 2.0);
  const double T = 200.0;
  const int reps = 500;
  std::vector<double> diff(reps);
  for (int r = 0; r < reps; ++r) {
    RandomStream rng(11, static_cast<std::uint64_t>(r));
    const auto p = simulate_rhp_cluster(model, kHalf, T, rng);
    double compensator = 0.0, last = 0.0;
    double immigrants = 0.0;
    for (std::size_t i = 1; i < p.times.size(); ++i) {
      if (p.flags[i] != 0) continue;
      compensator += model.cumulative_hazard(p.times[i] - last);
      last = p.times[i];
      immigrants += 1.0;
    }
    compensator += model.cumulative_hazard(T - last);
    diff[r] = compensator - immigrants;
  }
  const auto mv = sample_mean_var(diff);
  const double se = std::sqrt(mv.variance / reps);
  CHECK(std::abs(mv.mean) < 3.0 * se + 1e-9);
}

TEST_CASE("time-averaged background hazard approaches the renewal rate") {
  const auto model = InterarrivalModel::weibull(3.0, 2.0);
  const double T = 10000.0;
  RandomStream rng(5, 0);
  const auto p = simulate_rhp_cluster(model, kHalf, T, rng);
  double compensator = 0.0, last = 0.0;
  for (std::size_t i = 1; i < p.times.size(); ++i) {
    if (p.flags[i] != 0) continue;
    compensator += model.cumulative_hazard(p.times[i] - last);
    last = p.times[i];
  }
  compensator += model.cumulative_hazard(T - last);
  CHECK(std::abs(compensator / T - model.rate()) / model.rate() < 0.05);
}

TEST_CASE("engines agree on the mean count at the one percent level") {
  const double T = 100.0;
  const int reps = 300;
  std::vector<double> nc(reps), nt(reps);
  for (int r = 0; r < reps; ++r) {
    RandomStream rc(42, static_cast<std::uint64_t>(r));
    RandomStream rt(42, static_cast<std::uint64_t>(reps + r));
    nc[r] = static_cast<double>(
        simulate_rhp_cluster(InterarrivalModel::weibull(3.0, 2.0), kHalf, T, rc)
            .times.size());
    nt[r] = static_cast<double>(
        simulate_rhp_thinning(InterarrivalModel::weibull(3.0, 2.0), kHalf, T, rt)
            .times.size());
  }
  const auto mc = sample_mean_var(nc);
  const auto mt = sample_mean_var(nt);
  const double z = (mc.mean - mt.mean) /
                   std::sqrt(mc.variance / reps + mt.variance / reps);
  CHECK(std::abs(z) < 2.5758293035489);
}

TEST_CASE("thinning respects a tiny initial window") {
  RandomStream rng(42, 6);
  const auto p = simulate_rhp_thinning(kExp1, kHalf, 50.0, rng, 0.05);
  check_path_invariants(p);
  CHECK(p.times.size() > 10);
  CHECK_THROWS_AS(simulate_rhp_thinning(kExp1, kHalf, 50.0, rng, 0.0),
                  std::invalid_argument);
}

}  // TEST_SUITE
