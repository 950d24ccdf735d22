#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "rhp/grid.hpp"
#include "rhp/parallel.hpp"
#include "rhp/random.hpp"

using namespace rhp;

namespace {

GridFunction tabulate(double step, std::size_t n, double (*fn)(double)) {
  GridFunction g{step, std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) g.values[i] = fn(g.node_time(i));
  return g;
}

}  // namespace

TEST_SUITE("grid") {

TEST_CASE("interpolation is exact for affine data and clamps the ends") {
  GridFunction g{0.5, {1.0, 2.0, 3.0, 4.0}};
  CHECK(g.t_max() == doctest::Approx(1.5));
  CHECK(g.interp(0.25) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(g.interp(1.25) == doctest::Approx(3.5).epsilon(1e-14));
  CHECK(g.interp(0.0) == 1.0);
  CHECK(g.interp(1.5) == 4.0);
  CHECK(g.interp(1.5 + 0.2) == 4.0);  // within half a step
  CHECK_THROWS_AS(g.interp(2.0), std::invalid_argument);
  CHECK_THROWS_AS(g.interp(-0.3), std::invalid_argument);
}

TEST_CASE("trapezoid of affine data is exact") {
  const auto g = tabulate(0.01, 501, [](double t) { return 2.0 * t + 1.0; });
  // integral of 2t+1 over [0,5] = 30
  CHECK(trapezoid(g) == doctest::Approx(30.0).epsilon(1e-12));
}

TEST_CASE("convolving unit functions gives the identity ramp") {
  GridFunction ones{0.1, std::vector<double>(51, 1.0)};
  const auto c = convolve(ones, ones);
  for (std::size_t i = 0; i < c.size(); ++i)
    CHECK(c.values[i] == doctest::Approx(c.node_time(i)).epsilon(1e-13));
}

TEST_CASE("convolution of exponentials matches the closed form") {
  const auto e = tabulate(0.005, 2001, [](double t) { return std::exp(-t); });
  const auto c = convolve(e, e);
  for (std::size_t i = 0; i < c.size(); i += 100) {
    const double t = c.node_time(i);
    CHECK(std::abs(c.values[i] - t * std::exp(-t)) < 1e-4);
  }
}

TEST_CASE("parallel and serial convolutions are bit-identical") {
  RandomStream rng(3, 1);
  GridFunction a{0.01, std::vector<double>(800)}, b{0.01, std::vector<double>(800)};
  for (auto& v : a.values) v = rng.next_uniform();
  for (auto& v : b.values) v = rng.next_uniform();

  const auto serial = convolve_serial(a, b);
  for (int threads : {1, 2, 4}) {
    par::set_threads(threads);
    const auto parallel = convolve(a, b);
    REQUIRE(parallel.size() == serial.size());
    for (std::size_t i = 0; i < serial.size(); ++i)
      CHECK(parallel.values[i] == serial.values[i]);
  }
  par::set_threads(0);
}

TEST_CASE("mismatched grids are rejected") {
  GridFunction a{0.1, std::vector<double>(10, 1.0)};
  GridFunction b{0.2, std::vector<double>(10, 1.0)};
  GridFunction c{0.1, std::vector<double>(11, 1.0)};
  CHECK_THROWS_AS(convolve(a, b), std::invalid_argument);
  CHECK_THROWS_AS(convolve(a, c), std::invalid_argument);
}

TEST_CASE("parallel for_index writes every slot exactly once") {
  std::vector<int> hits(10000, 0);
  par::for_index(10000, [&](std::int64_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
}

}  // TEST_SUITE
