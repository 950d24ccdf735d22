#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>
#include <vector>

#include "rhp/model.hpp"
#include "rhp/random.hpp"
#include "rhp/stats.hpp"

using namespace rhp;

namespace {

// Fine trapezoid quadrature of fn over [0, hi].
template <class F>
double integrate(F&& fn, double hi, int nodes) {
  const double dt = hi / nodes;
  double acc = 0.5 * (fn(0.0) + fn(hi));
  for (int i = 1; i < nodes; ++i) acc += fn(dt * i);
  return dt * acc;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("moments and hazard of the stock distributions") {
  const auto e2 = InterarrivalModel::exponential(2.0);
  CHECK(e2.mean() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(e2.raw_moment(2) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(e2.variance() == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(e2.hazard(0.0) == doctest::Approx(2.0));
  CHECK(e2.hazard(5.3) == doctest::Approx(2.0));
  CHECK(e2.cumulative_hazard(3.0) == doctest::Approx(6.0).epsilon(1e-14));

  const auto w = InterarrivalModel::weibull(3.0, 2.0);
  // mean = 3*Gamma(1.5), variance = 9*(1 - pi/4)
  CHECK(w.mean() == doctest::Approx(2.658680776358274).epsilon(1e-12));
  CHECK(w.raw_moment(2) == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(w.variance() == doctest::Approx(1.931416529422965).epsilon(1e-12));
  CHECK(w.hazard(3.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(w.hazard(0.0) == 0.0);
  CHECK(w.cumulative_hazard(6.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(w.rate() == doctest::Approx(0.376126389031838).epsilon(1e-12));
}

TEST_CASE("cumulative hazard equals -log(1 - cdf)") {
  for (const auto& m : {InterarrivalModel::exponential(1.7),
                        InterarrivalModel::weibull(3.0, 2.0),
                        InterarrivalModel::weibull(1.0, 0.5)}) {
    for (double t : {0.1, 0.5, 1.0, 2.0, 4.0}) {
      const double direct = m.cumulative_hazard(t);
      const double via_cdf = -std::log(1.0 - m.cdf(t));
      CHECK(direct == doctest::Approx(via_cdf).epsilon(1e-12));
    }
  }
}

TEST_CASE("inverse transform hits known quantiles") {
  const auto w = InterarrivalModel::weibull(3.0, 2.0);
  CHECK(w.from_uniform(std::exp(-1.0)) == doctest::Approx(3.0).epsilon(1e-13));
  const auto e = InterarrivalModel::exponential(2.0);
  CHECK(e.from_uniform(0.5) == doctest::Approx(std::log(2.0) / 2.0).epsilon(1e-13));
  CHECK(e.cdf(std::log(2.0)) == doctest::Approx(0.75).epsilon(1e-13));
  CHECK_THROWS_AS(w.from_uniform(0.0), std::invalid_argument);
  CHECK_THROWS_AS(w.from_uniform(1.0), std::invalid_argument);
}

TEST_CASE("unit-mean scaling") {
  CHECK(weibull_unit_mean_scale(2.0) ==
        doctest::Approx(1.1283791670955126).epsilon(1e-14));
  for (double k : {0.5, 1.0, 2.0, 4.0}) {
    const auto m = InterarrivalModel::weibull(weibull_unit_mean_scale(k), k);
    CHECK(m.mean() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("densities integrate to one") {
  for (const auto& m : {InterarrivalModel::exponential(1.0),
                        InterarrivalModel::exponential(2.0),
                        InterarrivalModel::weibull(3.0, 2.0),
                        InterarrivalModel::weibull(1.0, 1.0),
                        InterarrivalModel::weibull(2.0, 4.0)}) {
    const double q = 40.0 * m.mean();
    const double mass = integrate([&](double t) { return m.density(t); }, q, 80000);
    CHECK(std::abs(mass - 1.0) < 1e-6);
  }
  // shape < 1 has a singular density at 0; verify total mass through the
  // CDF, whose stretched-exponential tail needs a long reach: the survival
  // at 40 means is still exp(-sqrt(80)), about 1.3e-4
  const auto heavy = InterarrivalModel::weibull(1.0, 0.5);
  CHECK(1.0 - heavy.cdf(40.0 * heavy.mean()) < 1e-3);
  CHECK(1.0 - heavy.cdf(400.0 * heavy.mean()) < 1e-9);
}

TEST_CASE("hazard_sup dominates the hazard on the window") {
  const auto cases = {InterarrivalModel::exponential(1.3),
                      InterarrivalModel::weibull(3.0, 2.0),
                      InterarrivalModel::weibull(1.0, 0.5)};
  RandomStream rng(21, 0);
  for (const auto& m : cases) {
    for (int rep = 0; rep < 200; ++rep) {
      const double a = 0.05 + 4.0 * rng.next_uniform();
      const double b = a + 3.0 * rng.next_uniform();
      const double sup = m.hazard_sup(a, b);
      for (int j = 0; j <= 20; ++j) {
        const double t = a + (b - a) * j / 20.0;
        CHECK(m.hazard(t) <= sup * (1.0 + 1e-12));
      }
    }
  }
  // unbounded at the origin for shape < 1
  CHECK(std::isinf(InterarrivalModel::weibull(1.0, 0.5).hazard_sup(0.0, 1.0)));
  CHECK_THROWS_AS(InterarrivalModel::exponential(1.0).hazard_sup(2.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(InterarrivalModel::exponential(1.0).hazard(-0.5),
                  std::invalid_argument);
}

TEST_CASE("sampling matches the first two moments") {
  const int n = 100000;
  for (const auto& m : {InterarrivalModel::exponential(1.0),
                        InterarrivalModel::weibull(3.0, 2.0)}) {
    RandomStream rng(77, 3);
    std::vector<double> xs(n);
    for (double& x : xs) {
      x = m.sample(rng);
      CHECK(x > 0.0);
    }
    const auto mv = sample_mean_var(xs);
    // 4-5 sigma windows for the sampling error of mean and variance
    CHECK(std::abs(mv.mean - m.mean()) < 0.02);
    CHECK(std::abs(mv.variance - m.variance()) < 0.06);
  }
}

TEST_CASE("kernel pointwise values, mass and support") {
  const auto ek = ExcitationKernel::exponential(0.5, 2.0);
  CHECK(ek.value(0.0) == doctest::Approx(1.0));
  CHECK(ek.value(1.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-13));
  CHECK(ek.value(-0.3) == 0.0);
  CHECK(ek.branching_ratio() == 0.5);
  CHECK(ek.sup_norm() == doctest::Approx(1.0));
  CHECK(ek.integral_to(1e9) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ek.integral_to(0.5) == doctest::Approx(0.5 * (1 - std::exp(-1.0))).epsilon(1e-12));
  const double tail = ek.effective_support(1e-9);
  CHECK(ek.value(tail * 1.0000001) <= 1e-9);
  CHECK(0.5 - ek.integral_to(tail) < 1e-9);

  const auto uk = ExcitationKernel::uniform(0.8, 2.0);
  CHECK(uk.value(0.0) == doctest::Approx(0.4));
  CHECK(uk.value(2.0) == doctest::Approx(0.4));
  CHECK(uk.value(2.0000001) == 0.0);
  CHECK(uk.integral_to(1.0) == doctest::Approx(0.4).epsilon(1e-13));
  CHECK(uk.integral_to(5.0) == doctest::Approx(0.8).epsilon(1e-13));
  CHECK(uk.effective_support(1e-9) == doctest::Approx(2.0));

  CHECK_THROWS_AS(ExcitationKernel::exponential(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ExcitationKernel::exponential(1.2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ExcitationKernel::exponential(-0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ExcitationKernel::uniform(0.5, 0.0), std::invalid_argument);
}

TEST_CASE("offspring counts are Poisson with the branching-ratio mean") {
  const auto ek = ExcitationKernel::exponential(0.5, 1.0);
  RandomStream rng(15, 0);
  std::vector<double> counts, offsets;
  std::vector<double> buf;
  int zeros = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    ek.sample_offspring_offsets(rng, buf);
    counts.push_back(static_cast<double>(buf.size()));
    if (buf.empty()) ++zeros;
    for (double d : buf) {
      CHECK(d > 0.0);
      offsets.push_back(d);
    }
  }
  const auto mv = sample_mean_var(counts);
  CHECK(std::abs(mv.mean - 0.5) < 0.01);
  CHECK(std::abs(mv.variance - 0.5) < 0.02);
  CHECK(std::abs(static_cast<double>(zeros) / n - std::exp(-0.5)) < 0.006);

  // displacements follow the normalized kernel, here Exp(beta = 1)
  const double d = ks_statistic(offsets, [](double x) {
    return x <= 0 ? 0.0 : 1.0 - std::exp(-x);
  });
  CHECK(d < 0.01);
}

TEST_CASE("uniform-kernel displacements are uniform on the support") {
  const auto uk = ExcitationKernel::uniform(0.8, 2.0);
  RandomStream rng(16, 0);
  std::vector<double> offsets, buf;
  while (offsets.size() < 100000) {
    uk.sample_offspring_offsets(rng, buf);
    for (double d : buf) {
      CHECK(d > 0.0);
      CHECK(d < 2.0);
      offsets.push_back(d);
    }
  }
  const double d = ks_statistic(
      offsets, [](double x) { return std::min(std::max(x / 2.0, 0.0), 1.0); });
  CHECK(d < 0.01);
}

TEST_CASE("zero branching ratio never spawns offspring") {
  const auto ek = ExcitationKernel::exponential(0.0, 1.0);
  RandomStream rng(17, 0);
  std::vector<double> buf{1.0, 2.0};
  for (int i = 0; i < 1000; ++i) {
    ek.sample_offspring_offsets(rng, buf);
    CHECK(buf.empty());
  }
}

TEST_CASE("spec parsing round trips and rejects malformed input") {
  const auto m = parse_model("weibull:3,2");
  CHECK(m.mean() == doctest::Approx(2.658680776358274).epsilon(1e-12));
  CHECK(parse_model("exp:2.5").mean() == doctest::Approx(0.4));
  const auto k = parse_kernel("expk:0.5,1");
  CHECK(k.branching_ratio() == 0.5);
  CHECK(parse_kernel("unifk:0.25,4").sup_norm() == doctest::Approx(0.0625));

  for (const char* bad :
       {"exp", "exp:", "exp:abc", "exp:1,2", "weibull:3", "weibull:3,2,1",
        "norm:1", "expk:0.5", "unifk:0.5,", ":1", "exp:1 ", "expk:1.0,1"}) {
    CHECK_THROWS_AS((void)parse_model(bad), std::invalid_argument);
    CHECK_THROWS_AS((void)parse_kernel(bad), std::invalid_argument);
  }
}

TEST_CASE("sampling is reproducible per stream") {
  const auto m = InterarrivalModel::weibull(3.0, 2.0);
  RandomStream a(42, 9), b(42, 9);
  for (int i = 0; i < 100; ++i) CHECK(m.sample(a) == m.sample(b));
}

}  // TEST_SUITE
