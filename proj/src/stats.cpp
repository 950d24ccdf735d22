#include "rhp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace rhp {

MeanVar sample_mean_var(std::span<const double> xs) {
  if (xs.size() < 2)
    throw std::invalid_argument("sample_mean_var needs at least two samples");
  double mean = 0.0, m2 = 0.0;
  std::size_t n = 0;
  for (double x : xs) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  return {mean, m2 / static_cast<double>(n - 1)};
}

double regression_through_origin(std::span<const double> xs,
                                 std::span<const double> ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("regression inputs differ in length");
  if (xs.empty()) throw std::invalid_argument("regression inputs are empty");
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  if (sxx <= 0.0)
    throw std::invalid_argument("regression abscissae are all zero");
  return sxy / sxx;
}

double ks_statistic(std::span<const double> samples,
                    const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_statistic on empty sample");
  std::vector<double> xs(samples.begin(), samples.end());
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::abs(static_cast<double>(i) / n - f));
  }
  return d;
}

double ks_critical_value(double alpha, std::size_t n) {
  if (n == 0) throw std::invalid_argument("ks_critical_value with n = 0");
  double c;
  if (alpha == 0.05)
    c = 1.358;
  else if (alpha == 0.01)
    c = 1.628;
  else
    throw std::invalid_argument("ks_critical_value supports alpha in {0.05, 0.01}");
  return c / std::sqrt(static_cast<double>(n));
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

}  // namespace rhp
