#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rhp/random.hpp"

namespace rhp {

struct Exponential {
  double rate;  // density rate*exp(-rate*t); E[X] = 1/rate
};

struct Weibull {
  double scale;  // lambda
  double shape;  // k; density (k/lambda)*(t/lambda)^(k-1)*exp(-(t/lambda)^k)
};

// Positive interarrival law for the self-renewing background stream.
// Hazard, cumulative hazard and quantile map are analytic per variant, so the
// simulators and diagnostics never touch a numerical root finder.
class InterarrivalModel {
 public:
  static InterarrivalModel exponential(double rate);
  static InterarrivalModel weibull(double scale, double shape);

  double density(double t) const;         // 0 for t < 0
  double cdf(double t) const;             // 0 for t < 0
  double hazard(double t) const;          // density/(1-cdf); t < 0 is an error
  double cumulative_hazard(double t) const;  // -log(1-cdf), exact per variant

  // Supremum of the hazard over [a, b]; monotone per variant so this is an
  // endpoint evaluation. Weibull with shape < 1 returns +inf when a == 0.
  double hazard_sup(double a, double b) const;

  double raw_moment(int n) const;  // E[X^n], n >= 1
  double mean() const { return mean_; }
  double second_moment() const { return second_; }
  double variance() const { return variance_; }
  double rate() const { return 1.0 / mean_; }  // renewal rate m

  // Inverse-transform map; u in (0,1).
  double from_uniform(double u) const;
  double sample(RandomStream& rng) const { return from_uniform(rng.next_uniform()); }

  bool unbounded_density_at_zero() const;  // true only for Weibull shape < 1
  const std::variant<Exponential, Weibull>& dist() const { return dist_; }
  std::string spec_string() const;  // "exp:<rate>" or "weibull:<scale>,<shape>"

 private:
  explicit InterarrivalModel(std::variant<Exponential, Weibull> d);
  std::variant<Exponential, Weibull> dist_;
  double mean_ = 0.0, second_ = 0.0, variance_ = 0.0;
};

// Scale that gives a Weibull of the requested shape unit mean.
double weibull_unit_mean_scale(double shape);

struct ExponentialKernel {
  double alpha;  // branching ratio, mass of the kernel
  double beta;   // decay rate; h(t) = alpha*beta*exp(-beta*t)
};

struct UniformKernel {
  double alpha;    // branching ratio
  double support;  // c; h(t) = alpha/c on [0, c], 0 beyond
};

// Subcritical excitation kernel: nonnegative, integrable, with total mass
// alpha < 1. Doubles as the offspring displacement law (density h/alpha).
class ExcitationKernel {
 public:
  static ExcitationKernel exponential(double alpha, double beta);
  static ExcitationKernel uniform(double alpha, double support);

  double value(double t) const;  // h(t); 0 for t < 0
  double integral_to(double t) const;  // H(t) = int_0^t h, 0 for t <= 0
  double branching_ratio() const { return alpha_; }
  double sup_norm() const;  // max of h
  // Smallest s with h(t) <= eps for all t > s.
  double effective_support(double eps) const;

  // One offspring displacement (density h/alpha); u in (0,1).
  double offset_from_uniform(double u) const;
  // Appends Poisson(alpha)-many i.i.d. displacements to out (cleared first).
  void sample_offspring_offsets(RandomStream& rng, std::vector<double>& out) const;

  const std::variant<ExponentialKernel, UniformKernel>& kind() const { return kind_; }
  std::string spec_string() const;  // "expk:<alpha>,<beta>" or "unifk:<alpha>,<c>"

 private:
  explicit ExcitationKernel(std::variant<ExponentialKernel, UniformKernel> k);
  std::variant<ExponentialKernel, UniformKernel> kind_;
  double alpha_ = 0.0;
};

// Parse "exp:<rate>" / "weibull:<scale>,<shape>" and
// "expk:<alpha>,<beta>" / "unifk:<alpha>,<c>". Malformed input throws
// std::invalid_argument naming the offending token.
InterarrivalModel parse_model(std::string_view spec);
ExcitationKernel parse_kernel(std::string_view spec);

}  // namespace rhp
