#pragma once

// Test-only reference implementations, kept deliberately independent of the
// library code they check: brute-force series instead of integral-equation
// solves, textbook closed forms, and a plain Box-Muller normal sampler.

#include <cmath>
#include <cstddef>
#include <vector>

#include "rhp/model.hpp"
#include "rhp/random.hpp"

namespace oracle {

// Renewal function as a truncated series: phi(t) = sum_{n=0}^{K} F^{*n}(t),
// where F^{*0} is the unit step and each further term is the convolution of
// the previous one with the density, evaluated by the trapezoid rule on the
// grid t_i = i*dt, i = 0..n_nodes-1. K must be large enough that renewals
// beyond the K-th are negligible on [0, t_max].
inline std::vector<double> neumann_phi(const rhp::InterarrivalModel& model,
                                       double t_max, double dt, int terms) {
  const std::size_t n =
      static_cast<std::size_t>(std::llround(t_max / dt)) + 1;
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i)
    f[i] = model.density(dt * static_cast<double>(i));

  std::vector<double> phi(n, 1.0);  // F^{*0} contributes 1 everywhere
  std::vector<double> g(n, 1.0), next(n);
  for (int k = 1; k <= terms; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i == 0) {
        next[0] = 0.0;
        continue;
      }
      double acc = 0.5 * (g[i] * f[0] + g[0] * f[i]);
      for (std::size_t j = 1; j < i; ++j) acc += g[i - j] * f[j];
      next[i] = dt * acc;
    }
    for (std::size_t i = 0; i < n; ++i) phi[i] += next[i];
    g = next;
  }
  return phi;
}

// Closed forms for the exponential family.
inline double phi_exponential(double rate, double t) { return 1.0 + rate * t; }

inline double psi_exponential_kernel(double alpha, double beta, double t) {
  return alpha * beta * std::exp(-beta * (1.0 - alpha) * t);
}

// Mean count for unit-rate exponential interarrivals with the
// alpha = 1/2, beta = 1 exponential kernel.
inline double mean_count_exp_half(double t) {
  return 2.0 * t + std::exp(-0.5 * t);
}

inline double box_muller(rhp::RandomStream& rng) {
  const double u1 = rng.next_uniform();
  const double u2 = rng.next_uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

}  // namespace oracle
