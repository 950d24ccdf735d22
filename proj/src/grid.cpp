#include "rhp/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "rhp/parallel.hpp"

namespace rhp {

namespace {

void require_shared_grid(const GridFunction& a, const GridFunction& b) {
  if (a.step != b.step || a.size() != b.size())
    throw std::invalid_argument("grid functions must share step and size");
  if (!(a.step > 0) || a.size() < 2)
    throw std::invalid_argument("grid needs a positive step and two nodes");
}

double conv_node(const GridFunction& a, const GridFunction& b, std::size_t i) {
  if (i == 0) return 0.0;
  double acc = 0.5 * (a.values[i] * b.values[0] + a.values[0] * b.values[i]);
  for (std::size_t j = 1; j < i; ++j) acc += a.values[i - j] * b.values[j];
  return a.step * acc;
}

}  // namespace

double GridFunction::interp(double t) const {
  if (values.empty()) throw std::invalid_argument("interp on empty grid");
  const double slack = 0.5 * step;
  if (t < -slack || t > t_max() + slack)
    throw std::invalid_argument("interp outside the grid range");
  if (t <= 0.0) return values.front();
  if (t >= t_max()) return values.back();
  const double x = t / step;
  const std::size_t i = static_cast<std::size_t>(x);
  if (i + 1 >= values.size()) return values.back();
  const double w = x - static_cast<double>(i);
  return values[i] * (1.0 - w) + values[i + 1] * w;
}

double trapezoid(const GridFunction& g) {
  if (g.size() < 2 || !(g.step > 0))
    throw std::invalid_argument("trapezoid needs a positive step and two nodes");
  double acc = 0.5 * (g.values.front() + g.values.back());
  for (std::size_t i = 1; i + 1 < g.size(); ++i) acc += g.values[i];
  return g.step * acc;
}

GridFunction convolve(const GridFunction& a, const GridFunction& b) {
  require_shared_grid(a, b);
  GridFunction out{a.step, std::vector<double>(a.size(), 0.0)};
  par::for_index(static_cast<std::int64_t>(a.size()), [&](std::int64_t i) {
    out.values[static_cast<std::size_t>(i)] =
        conv_node(a, b, static_cast<std::size_t>(i));
  });
  return out;
}

GridFunction convolve_serial(const GridFunction& a, const GridFunction& b) {
  require_shared_grid(a, b);
  GridFunction out{a.step, std::vector<double>(a.size(), 0.0)};
  par::for_index_serial(static_cast<std::int64_t>(a.size()), [&](std::int64_t i) {
    out.values[static_cast<std::size_t>(i)] =
        conv_node(a, b, static_cast<std::size_t>(i));
  });
  return out;
}

}  // namespace rhp
