#include "rhp/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace rhp {

std::size_t count(const PointProcessPath& path, double t) {
  if (t < 0 || t > path.horizon)
    throw std::invalid_argument("count needs 0 <= t <= horizon");
  return static_cast<std::size_t>(
      std::upper_bound(path.times.begin(), path.times.end(), t) -
      path.times.begin());
}

std::size_t last_immigrant_index(const PointProcessPath& path, double t) {
  if (t < 0) throw std::invalid_argument("last_immigrant_index needs t >= 0");
  if (path.times.empty() || path.times.front() != 0.0 || path.flags.front() != 0)
    throw std::invalid_argument("path lacks the background point at time 0");
  auto it = std::upper_bound(path.times.begin(), path.times.end(), t);
  std::size_t i = static_cast<std::size_t>(it - path.times.begin());
  while (i > 0) {
    --i;
    if (path.flags[i] == 0) return i;
  }
  return 0;
}

double intensity_at(const PointProcessPath& path, const InterarrivalModel& model,
                    const ExcitationKernel& kernel, double t) {
  if (t < 0 || t > path.horizon)
    throw std::invalid_argument("intensity_at needs 0 <= t <= horizon");
  const auto first_ge =
      std::lower_bound(path.times.begin(), path.times.end(), t);
  const std::size_t n_before =
      static_cast<std::size_t>(first_ge - path.times.begin());
  double s_last = 0.0;
  for (std::size_t i = n_before; i > 0;) {
    --i;
    if (path.flags[i] == 0) {
      s_last = path.times[i];
      break;
    }
  }
  double lam = model.hazard(t - s_last);
  for (std::size_t i = 0; i < n_before; ++i)
    lam += kernel.value(t - path.times[i]);
  return lam;
}

std::vector<double> simulate_renewal(const InterarrivalModel& model,
                                     double horizon, RandomStream& rng) {
  if (!(horizon > 0)) throw std::invalid_argument("horizon must be positive");
  std::vector<double> s{0.0};
  double t = 0.0;
  for (;;) {
    t += model.sample(rng);
    if (t > horizon) break;
    s.push_back(t);
  }
  return s;
}

ClusterResult simulate_cluster(const ExcitationKernel& kernel, double t0,
                               double horizon, RandomStream& rng,
                               std::size_t generation_cap) {
  if (!(t0 >= 0) || !(t0 <= horizon))
    throw std::invalid_argument("cluster ancestor must lie in [0, horizon]");
  ClusterResult res;
  std::vector<double> gen{t0}, next, offs;
  for (std::size_t g = 0; !gen.empty(); ++g) {
    if (g >= generation_cap)
      throw std::runtime_error("cluster generation cap exceeded");
    next.clear();
    for (double parent : gen) {
      kernel.sample_offspring_offsets(rng, offs);
      for (double d : offs) {
        const double child = parent + d;
        if (child > horizon) {
          ++res.escaped;
        } else {
          res.descendants.push_back(child);
          next.push_back(child);
        }
      }
    }
    std::swap(gen, next);
  }
  return res;
}

namespace {

PointProcessPath assemble_sorted(std::vector<std::pair<double, std::uint8_t>> ev,
                                 double horizon, std::uint64_t escaped,
                                 Engine engine) {
  std::sort(ev.begin(), ev.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  PointProcessPath p;
  p.horizon = horizon;
  p.escaped_count = escaped;
  p.engine = engine;
  p.times.reserve(ev.size());
  p.flags.reserve(ev.size());
  for (std::size_t i = 0; i < ev.size(); ++i) {
    if (i > 0 && !(ev[i].first > ev[i - 1].first))
      throw std::runtime_error("coincident event times in simulated path");
    p.times.push_back(ev[i].first);
    p.flags.push_back(ev[i].second);
  }
  return p;
}

}  // namespace

PointProcessPath simulate_rhp_cluster(const InterarrivalModel& model,
                                      const ExcitationKernel& kernel,
                                      double horizon, RandomStream& rng) {
  const auto immigrants = simulate_renewal(model, horizon, rng);
  std::vector<std::pair<double, std::uint8_t>> ev;
  std::uint64_t escaped = 0;
  for (double s : immigrants) {
    ev.emplace_back(s, std::uint8_t{0});
    auto cluster = simulate_cluster(kernel, s, horizon, rng);
    escaped += cluster.escaped;
    for (double d : cluster.descendants) ev.emplace_back(d, std::uint8_t{1});
  }
  return assemble_sorted(std::move(ev), horizon, escaped, Engine::Cluster);
}

namespace {

// Running value of the excitation sum plus a bound valid from a given time
// onward. Both kernels decay (weakly) after every event, so the value at the
// window start dominates the window.
class ExcitationTracker {
 public:
  explicit ExcitationTracker(const ExcitationKernel& k) : kernel_(&k) {
    if (const auto* e = std::get_if<ExponentialKernel>(&k.kind())) {
      beta_ = e->beta;
      jump_ = e->alpha * e->beta;
      exponential_ = true;
    } else {
      const auto& u = std::get<UniformKernel>(k.kind());
      support_ = u.support;
      per_event_ = u.alpha / u.support;
    }
  }

  double value(double t) const {
    if (exponential_) return sum_ * std::exp(-beta_ * (t - at_));
    const auto cut = std::lower_bound(events_.begin(), events_.end(), t - support_);
    return per_event_ * static_cast<double>(events_.end() - cut);
  }

  // Upper bound for the excitation on [t, infinity): both variants are
  // nonincreasing between events, so the current value works.
  double bound(double t) const { return value(t); }

  void add_event(double t) {
    if (exponential_) {
      sum_ = value(t) + jump_;
      at_ = t;
    } else {
      events_.push_back(t);
    }
  }

 private:
  const ExcitationKernel* kernel_;
  bool exponential_ = false;
  double beta_ = 0.0, jump_ = 0.0;  // exponential kernel state
  double sum_ = 0.0, at_ = 0.0;
  double support_ = 0.0, per_event_ = 0.0;  // uniform kernel state
  std::vector<double> events_;
};

}  // namespace

PointProcessPath simulate_rhp_thinning(const InterarrivalModel& model,
                                       const ExcitationKernel& kernel,
                                       double horizon, RandomStream& rng,
                                       double initial_window) {
  if (!(horizon > 0)) throw std::invalid_argument("horizon must be positive");
  if (!(initial_window > 0))
    throw std::invalid_argument("lookahead window must be positive");

  PointProcessPath p;
  p.horizon = horizon;
  p.engine = Engine::Thinning;
  p.times.push_back(0.0);
  p.flags.push_back(0);

  ExcitationTracker exc(kernel);
  exc.add_event(0.0);

  double t = 0.0, s_last = 0.0, window = initial_window;
  long proposals = 0, accepts = 0;
  while (t < horizon) {
    const double elapsed = t - s_last;
    const double hazard_bound = model.hazard_sup(elapsed, elapsed + window);
    if (!std::isfinite(hazard_bound))
      throw std::invalid_argument(
          "hazard is unbounded on the lookahead window (Weibull shape < 1); "
          "use the cluster engine for this model");
    const double bar = hazard_bound + exc.bound(t);
    if (!(bar > 0)) {  // dead window, skip it
      t += window;
      continue;
    }
    const double cand = t - std::log(rng.next_uniform()) / bar;
    if (cand > t + window) {  // bound only certifies the window
      t += window;
      continue;
    }
    if (cand >= horizon) break;
    ++proposals;
    const double lam_h = model.hazard(cand - s_last);
    const double lam = lam_h + exc.value(cand);
    if (lam > bar)
      throw std::runtime_error("thinning bound violated; majorant too small");
    if (rng.next_uniform() * bar <= lam) {
      ++accepts;
      const bool immigrant = rng.next_uniform() * lam <= lam_h;
      p.times.push_back(cand);
      p.flags.push_back(immigrant ? 0 : 1);
      exc.add_event(cand);
      if (immigrant) s_last = cand;
    }
    t = cand;
    if (proposals >= 64) {  // shrink the window when almost everything is rejected
      if (accepts * 20 < proposals) window = std::max(0.5 * window, 1e-3);
      proposals = accepts = 0;
    }
  }
  return p;
}

PointProcessPath simulate_path(Engine engine, const InterarrivalModel& model,
                               const ExcitationKernel& kernel, double horizon,
                               RandomStream& rng) {
  return engine == Engine::Cluster
             ? simulate_rhp_cluster(model, kernel, horizon, rng)
             : simulate_rhp_thinning(model, kernel, horizon, rng);
}

}  // namespace rhp
