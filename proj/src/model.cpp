#include "rhp/model.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace rhp {

namespace {

double strict_double(std::string_view token, std::string_view spec) {
  std::string buf(token);
  if (buf.empty() || buf.find_first_of(" \t") != std::string::npos)
    throw std::invalid_argument("bad numeric token '" + buf + "' in spec '" +
                                std::string(spec) + "'");
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || !std::isfinite(v))
    throw std::invalid_argument("bad numeric token '" + buf + "' in spec '" +
                                std::string(spec) + "'");
  return v;
}

std::vector<double> split_args(std::string_view args, std::string_view spec,
                               std::size_t expected) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = args.find(',', pos);
    const std::string_view piece =
        args.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                         : comma - pos);
    out.push_back(strict_double(piece, spec));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.size() != expected)
    throw std::invalid_argument("spec '" + std::string(spec) + "' expects " +
                                std::to_string(expected) + " parameter(s)");
  return out;
}

std::string trim_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

InterarrivalModel::InterarrivalModel(std::variant<Exponential, Weibull> d)
    : dist_(d) {
  mean_ = raw_moment(1);
  second_ = raw_moment(2);
  variance_ = second_ - mean_ * mean_;
}

InterarrivalModel InterarrivalModel::exponential(double rate) {
  if (!(rate > 0)) throw std::invalid_argument("exponential rate must be positive");
  return InterarrivalModel(Exponential{rate});
}

InterarrivalModel InterarrivalModel::weibull(double scale, double shape) {
  if (!(scale > 0) || !(shape > 0))
    throw std::invalid_argument("weibull scale and shape must be positive");
  return InterarrivalModel(Weibull{scale, shape});
}

double InterarrivalModel::density(double t) const {
  if (t < 0) return 0.0;
  if (const auto* e = std::get_if<Exponential>(&dist_))
    return e->rate * std::exp(-e->rate * t);
  const auto& w = std::get<Weibull>(dist_);
  const double x = t / w.scale;
  return (w.shape / w.scale) * std::pow(x, w.shape - 1.0) *
         std::exp(-std::pow(x, w.shape));
}

double InterarrivalModel::cdf(double t) const {
  if (t <= 0) return 0.0;
  if (const auto* e = std::get_if<Exponential>(&dist_))
    return -std::expm1(-e->rate * t);
  const auto& w = std::get<Weibull>(dist_);
  return -std::expm1(-std::pow(t / w.scale, w.shape));
}

double InterarrivalModel::hazard(double t) const {
  if (t < 0) throw std::invalid_argument("hazard at negative time");
  if (const auto* e = std::get_if<Exponential>(&dist_)) return e->rate;
  const auto& w = std::get<Weibull>(dist_);
  // density/(1-cdf) collapses to the power form; exact, no cancellation.
  return (w.shape / w.scale) * std::pow(t / w.scale, w.shape - 1.0);
}

double InterarrivalModel::cumulative_hazard(double t) const {
  if (t < 0) throw std::invalid_argument("cumulative hazard at negative time");
  if (const auto* e = std::get_if<Exponential>(&dist_)) return e->rate * t;
  const auto& w = std::get<Weibull>(dist_);
  return std::pow(t / w.scale, w.shape);
}

double InterarrivalModel::hazard_sup(double a, double b) const {
  if (!(a >= 0) || !(b >= a))
    throw std::invalid_argument("hazard_sup needs 0 <= a <= b");
  if (std::holds_alternative<Exponential>(dist_)) return hazard(a);
  const auto& w = std::get<Weibull>(dist_);
  return w.shape >= 1.0 ? hazard(b) : hazard(a);
}

double InterarrivalModel::raw_moment(int n) const {
  if (n < 1) throw std::invalid_argument("raw_moment needs n >= 1");
  if (const auto* e = std::get_if<Exponential>(&dist_))
    return std::tgamma(static_cast<double>(n) + 1.0) /
           std::pow(e->rate, static_cast<double>(n));
  const auto& w = std::get<Weibull>(dist_);
  return std::pow(w.scale, static_cast<double>(n)) *
         std::tgamma(1.0 + static_cast<double>(n) / w.shape);
}

double InterarrivalModel::from_uniform(double u) const {
  if (!(u > 0) || !(u < 1))
    throw std::invalid_argument("from_uniform needs u in (0,1)");
  if (const auto* e = std::get_if<Exponential>(&dist_))
    return -std::log(u) / e->rate;
  const auto& w = std::get<Weibull>(dist_);
  return w.scale * std::pow(-std::log(u), 1.0 / w.shape);
}

bool InterarrivalModel::unbounded_density_at_zero() const {
  const auto* w = std::get_if<Weibull>(&dist_);
  return w != nullptr && w->shape < 1.0;
}

std::string InterarrivalModel::spec_string() const {
  if (const auto* e = std::get_if<Exponential>(&dist_))
    return "exp:" + trim_number(e->rate);
  const auto& w = std::get<Weibull>(dist_);
  return "weibull:" + trim_number(w.scale) + "," + trim_number(w.shape);
}

double weibull_unit_mean_scale(double shape) {
  if (!(shape > 0)) throw std::invalid_argument("shape must be positive");
  return 1.0 / std::tgamma(1.0 + 1.0 / shape);
}

ExcitationKernel::ExcitationKernel(
    std::variant<ExponentialKernel, UniformKernel> k)
    : kind_(k) {
  alpha_ = std::visit([](const auto& kk) { return kk.alpha; }, kind_);
}

ExcitationKernel ExcitationKernel::exponential(double alpha, double beta) {
  if (!(alpha >= 0) || alpha >= 1.0)
    throw std::invalid_argument("branching ratio alpha must lie in [0,1)");
  if (!(beta > 0)) throw std::invalid_argument("kernel decay beta must be positive");
  return ExcitationKernel(ExponentialKernel{alpha, beta});
}

ExcitationKernel ExcitationKernel::uniform(double alpha, double support) {
  if (!(alpha >= 0) || alpha >= 1.0)
    throw std::invalid_argument("branching ratio alpha must lie in [0,1)");
  if (!(support > 0)) throw std::invalid_argument("kernel support must be positive");
  return ExcitationKernel(UniformKernel{alpha, support});
}

double ExcitationKernel::value(double t) const {
  if (t < 0) return 0.0;
  if (const auto* e = std::get_if<ExponentialKernel>(&kind_))
    return e->alpha * e->beta * std::exp(-e->beta * t);
  const auto& u = std::get<UniformKernel>(kind_);
  return t <= u.support ? u.alpha / u.support : 0.0;
}

double ExcitationKernel::integral_to(double t) const {
  if (t <= 0) return 0.0;
  if (const auto* e = std::get_if<ExponentialKernel>(&kind_))
    return -e->alpha * std::expm1(-e->beta * t);
  const auto& u = std::get<UniformKernel>(kind_);
  return t >= u.support ? u.alpha : u.alpha * t / u.support;
}

double ExcitationKernel::sup_norm() const {
  if (const auto* e = std::get_if<ExponentialKernel>(&kind_))
    return e->alpha * e->beta;
  const auto& u = std::get<UniformKernel>(kind_);
  return u.alpha / u.support;
}

double ExcitationKernel::effective_support(double eps) const {
  if (!(eps > 0)) throw std::invalid_argument("eps must be positive");
  if (const auto* e = std::get_if<ExponentialKernel>(&kind_)) {
    const double peak = e->alpha * e->beta;
    return peak <= eps ? 0.0 : std::log(peak / eps) / e->beta;
  }
  return std::get<UniformKernel>(kind_).support;
}

double ExcitationKernel::offset_from_uniform(double u) const {
  if (!(u > 0) || !(u < 1))
    throw std::invalid_argument("offset_from_uniform needs u in (0,1)");
  if (const auto* e = std::get_if<ExponentialKernel>(&kind_))
    return -std::log(u) / e->beta;
  return std::get<UniformKernel>(kind_).support * u;
}

void ExcitationKernel::sample_offspring_offsets(RandomStream& rng,
                                                std::vector<double>& out) const {
  out.clear();
  if (alpha_ <= 0.0) return;
  // Poisson(alpha) by uniform products; alpha < 1 keeps the loop short.
  const double limit = std::exp(-alpha_);
  int k = 0;
  double p = rng.next_uniform();
  while (p > limit) {
    ++k;
    p *= rng.next_uniform();
  }
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) out.push_back(offset_from_uniform(rng.next_uniform()));
}

std::string ExcitationKernel::spec_string() const {
  if (const auto* e = std::get_if<ExponentialKernel>(&kind_))
    return "expk:" + trim_number(e->alpha) + "," + trim_number(e->beta);
  const auto& u = std::get<UniformKernel>(kind_);
  return "unifk:" + trim_number(u.alpha) + "," + trim_number(u.support);
}

InterarrivalModel parse_model(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("model spec '" + std::string(spec) +
                                "' lacks a ':'");
  const std::string_view name = spec.substr(0, colon);
  const std::string_view args = spec.substr(colon + 1);
  if (name == "exp") {
    const auto a = split_args(args, spec, 1);
    return InterarrivalModel::exponential(a[0]);
  }
  if (name == "weibull") {
    const auto a = split_args(args, spec, 2);
    return InterarrivalModel::weibull(a[0], a[1]);
  }
  throw std::invalid_argument("unknown model family '" + std::string(name) + "'");
}

ExcitationKernel parse_kernel(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw std::invalid_argument("kernel spec '" + std::string(spec) +
                                "' lacks a ':'");
  const std::string_view name = spec.substr(0, colon);
  const std::string_view args = spec.substr(colon + 1);
  if (name == "expk") {
    const auto a = split_args(args, spec, 2);
    return ExcitationKernel::exponential(a[0], a[1]);
  }
  if (name == "unifk") {
    const auto a = split_args(args, spec, 2);
    return ExcitationKernel::uniform(a[0], a[1]);
  }
  throw std::invalid_argument("unknown kernel family '" + std::string(name) + "'");
}

}  // namespace rhp
