#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace rhp {

struct MeanVar {
  double mean = 0.0;
  double variance = 0.0;  // unbiased, divisor n-1
};

// Welford one-pass estimates; agrees with an exact two-pass computation to
// ~1e-10 relative on sane data. Requires at least two samples.
MeanVar sample_mean_var(std::span<const double> xs);

// Least-squares slope of y = b*x with no intercept: sum(x*y) / sum(x^2).
double regression_through_origin(std::span<const double> xs,
                                 std::span<const double> ys);

// One-sample Kolmogorov-Smirnov distance against a reference CDF.
double ks_statistic(std::span<const double> samples,
                    const std::function<double(double)>& cdf);

// Asymptotic critical value c(alpha)/sqrt(n) for alpha in {0.05, 0.01}.
double ks_critical_value(double alpha, std::size_t n);

// Standard normal CDF via erfc; accurate to ~1e-15 over the real line.
double normal_cdf(double x);

}  // namespace rhp
