#include "rhp/renewal.hpp"

#include <cmath>
#include <stdexcept>

namespace rhp {

namespace {

std::size_t grid_size(double T, double dt) {
  if (!(T > 0) || !(dt > 0))
    throw std::invalid_argument("grid needs positive T and step");
  if (dt > T / 100.0)
    throw std::invalid_argument("grid step must be at most T/100");
  return static_cast<std::size_t>(std::llround(T / dt)) + 1;
}

}  // namespace

GridFunction solve_renewal_equation(const GridFunction& z,
                                    const GridFunction& density) {
  if (z.step != density.step || z.size() != density.size())
    throw std::invalid_argument("z and density must share the grid");
  if (!(z.step > 0) || z.size() < 2)
    throw std::invalid_argument("grid needs a positive step and two nodes");
  const auto& f = density.values;
  for (double v : f)
    if (v < 0) throw std::invalid_argument("density must be nonnegative");
  // Trapezoid mass of a proper density overshoots 1 by its own quadrature
  // error, roughly (step^2/12) * int|f''|, estimated here from second
  // differences. Anything beyond a safety multiple of that is a genuinely
  // super-unit input, not roundoff.
  double curvature = 0.0;
  for (std::size_t i = 1; i + 1 < f.size(); ++i)
    curvature += std::abs(f[i + 1] - 2.0 * f[i] + f[i - 1]);
  if (trapezoid(density) > 1.0 + 1e-9 + 0.25 * density.step * curvature)
    throw std::invalid_argument("density mass exceeds 1 beyond quadrature error");
  const double dt = z.step;
  const double divisor = 1.0 - 0.5 * dt * f[0];
  if (divisor <= 0)
    throw std::invalid_argument(
        "grid step too coarse for the density at 0; reduce the step");

  const std::size_t n = z.size();
  std::vector<double> out(n);
  out[0] = z.values[0];
  for (std::size_t i = 1; i < n; ++i) {
    // trapezoid over [0, t_i] with the unknown Z(t_i) moved to the left side
    double acc = 0.5 * out[0] * f[i];
    for (std::size_t j = 1; j < i; ++j) acc += out[i - j] * f[j];
    out[i] = (z.values[i] + dt * acc) / divisor;
  }
  return {dt, std::move(out)};
}

GridFunction density_grid(const InterarrivalModel& model, double T, double dt) {
  if (model.unbounded_density_at_zero())
    throw std::invalid_argument(
        "interarrival density is unbounded at 0 (Weibull shape < 1); "
        "the grid solver does not support it");
  const std::size_t n = grid_size(T, dt);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = model.density(dt * static_cast<double>(i));
  return {dt, std::move(v)};
}

GridFunction kernel_grid(const ExcitationKernel& kernel, double T, double dt) {
  const std::size_t n = grid_size(T, dt);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = kernel.value(dt * static_cast<double>(i));
  return {dt, std::move(v)};
}

GridFunction renewal_function(const InterarrivalModel& model, double T,
                              double dt) {
  auto f = density_grid(model, T, dt);
  GridFunction ones{f.step, std::vector<double>(f.size(), 1.0)};
  return solve_renewal_equation(ones, f);
}

GridFunction psi_function(const ExcitationKernel& kernel, double T, double dt) {
  auto h = kernel_grid(kernel, T, dt);
  return solve_renewal_equation(h, h);
}

GridFunction mean_count(const InterarrivalModel& model,
                        const ExcitationKernel& kernel, double T, double dt) {
  auto refs = renewal_references(model, kernel, T, dt);
  return std::move(refs.mean);
}

RenewalReferences renewal_references(const InterarrivalModel& model,
                                     const ExcitationKernel& kernel, double T,
                                     double dt) {
  RenewalReferences refs;
  refs.phi = renewal_function(model, T, dt);
  refs.psi = psi_function(kernel, T, dt);
  refs.mean = convolve(refs.psi, refs.phi);
  for (std::size_t i = 0; i < refs.mean.size(); ++i)
    refs.mean.values[i] += refs.phi.values[i];
  return refs;
}

double verify_linear_functional(const PointProcessPath& path,
                                const ExcitationKernel& kernel,
                                const RenewalReferences& refs) {
  const GridFunction& phi = refs.phi;
  const double dt = phi.step;
  if (phi.t_max() + 0.5 * dt < path.horizon)
    throw std::invalid_argument("reference grid does not cover the path horizon");
  const std::size_t n = phi.size();

  std::vector<double> counts(n), a(n);
  std::size_t ev = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ti = phi.node_time(i);
    while (ev < path.times.size() && path.times[ev] <= ti) ++ev;
    double compensator = 0.0;
    for (std::size_t j = 0; j < ev; ++j)
      compensator += kernel.integral_to(ti - path.times[j]);
    counts[i] = static_cast<double>(ev);
    a[i] = counts[i] - compensator - phi.values[i];
  }

  const GridFunction ag{dt, a};
  const GridFunction conv = convolve(refs.psi, ag);
  double residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lhs = a[i] + conv.values[i];
    const double rhs = counts[i] - refs.mean.values[i];
    residual = std::max(residual, std::abs(lhs - rhs));
  }
  return residual;
}

double verify_linear_functional(const PointProcessPath& path,
                                const InterarrivalModel& model,
                                const ExcitationKernel& kernel, double dt) {
  const auto refs = renewal_references(model, kernel, path.horizon, dt);
  return verify_linear_functional(path, kernel, refs);
}

}  // namespace rhp
