#pragma once

#include <cstddef>
#include <vector>

namespace rhp {

// Function sampled on the uniform grid t_i = i*step, i = 0..size()-1.
struct GridFunction {
  double step = 0.0;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double node_time(std::size_t i) const { return step * static_cast<double>(i); }
  double t_max() const { return values.empty() ? 0.0 : node_time(values.size() - 1); }
  double operator[](std::size_t i) const { return values[i]; }

  // Linear interpolation; tolerates half-a-step of float slack at the ends,
  // anything further out is an error.
  double interp(double t) const;
};

// Trapezoid integral over the full grid range.
double trapezoid(const GridFunction& g);

// Trapezoid discretization of (a * b)(t_i) = int_0^{t_i} a(t_i - s) b(s) ds.
// Both factors must share the grid. The parallel version splits over output
// nodes with a fixed inner summation order, so it is bit-identical to the
// serial one at any thread count.
GridFunction convolve(const GridFunction& a, const GridFunction& b);
GridFunction convolve_serial(const GridFunction& a, const GridFunction& b);

}  // namespace rhp
