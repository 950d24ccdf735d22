#include "rhp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rhp/parallel.hpp"
#include "rhp/renewal.hpp"
#include "rhp/stats.hpp"

namespace rhp {

namespace {

constexpr double kZ995 = 2.5758293035489004;  // two-sided 1% normal quantile

struct ParsedConfig {
  InterarrivalModel model;
  ExcitationKernel kernel;
  LimitConstants constants;
};

ParsedConfig parse_and_validate(const ExperimentConfig& cfg,
                                bool needs_v_grid = false) {
  if (cfg.replications < 2)
    throw std::invalid_argument("experiments need at least two replications");
  if (cfg.horizons.empty())
    throw std::invalid_argument("experiments need at least one horizon");
  for (double T : cfg.horizons)
    if (!(T > 0)) throw std::invalid_argument("horizons must be positive");
  if (needs_v_grid) {
    if (cfg.v_grid.empty())
      throw std::invalid_argument("experiment needs a fraction grid");
    double prev = 0.0;
    for (double v : cfg.v_grid) {
      if (!(v > prev) || v > 1.0)
        throw std::invalid_argument(
            "fraction grid must be strictly increasing within (0, 1]");
      prev = v;
    }
  }
  auto model = parse_model(cfg.model_spec);
  auto kernel = parse_kernel(cfg.kernel_spec);
  auto constants = limit_constants(model, kernel);
  return {std::move(model), std::move(kernel), std::move(constants)};
}

// The trapezoid solve carries an O(dt^2) defect that accumulates through
// the renewal structure and grows roughly like t^2; at T = 500 it reaches a
// couple of events, enough to bias the fluctuation means. One halve-and-
// extrapolate pass removes the dt^2 term for the centering curve.
GridFunction extrapolated_mean_count(const InterarrivalModel& model,
                                     const ExcitationKernel& kernel, double T,
                                     double dt) {
  const auto coarse = mean_count(model, kernel, T, dt);
  const auto fine = mean_count(model, kernel, T, 0.5 * dt);
  std::vector<double> v(coarse.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = (4.0 * fine.values[2 * i] - coarse.values[i]) / 3.0;
  return {dt, std::move(v)};
}

double median_of(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

// Exact integral of the background hazard over [0, T]: between consecutive
// renewal points it telescopes to the cumulative hazard of each gap.
double integrated_background_hazard(const PointProcessPath& path,
                                    const InterarrivalModel& model) {
  double acc = 0.0, last = 0.0;
  for (std::size_t i = 1; i < path.times.size(); ++i) {
    if (path.flags[i] != 0) continue;
    acc += model.cumulative_hazard(path.times[i] - last);
    last = path.times[i];
  }
  acc += model.cumulative_hazard(path.horizon - last);
  return acc;
}

}  // namespace

std::vector<double> default_v_grid() {
  std::vector<double> v;
  for (int i = 1; i <= 20; ++i) v.push_back(0.05 * static_cast<double>(i));
  v.back() = 1.0;
  return v;
}

LlnReport run_lln(const ExperimentConfig& cfg) {
  const auto pc = parse_and_validate(cfg, /*needs_v_grid=*/true);
  const std::int64_t reps = cfg.replications;
  const double slope = pc.constants.lln_slope;

  LlnReport rep;
  rep.constants = pc.constants;
  for (std::size_t ti = 0; ti < cfg.horizons.size(); ++ti) {
    const double T = cfg.horizons[ti];
    std::vector<double> sup(reps), hazard(reps);
    par::for_index(reps, [&](std::int64_t r) {
      RandomStream rng(cfg.seed, static_cast<std::uint64_t>(ti) * reps + r);
      const auto path = simulate_path(cfg.engine, pc.model, pc.kernel, T, rng);
      double worst = 0.0;
      for (double v : cfg.v_grid) {
        const double dev =
            std::abs(static_cast<double>(count(path, v * T)) / T - v * slope);
        worst = std::max(worst, dev);
      }
      sup[r] = worst;
      hazard[r] = integrated_background_hazard(path, pc.model) / T;
    });
    LlnRow row;
    row.horizon = T;
    row.mean_sup_dev = sample_mean_var(sup).mean;
    row.median_sup_dev = median_of(sup);
    row.max_sup_dev = *std::max_element(sup.begin(), sup.end());
    row.hazard_avg = sample_mean_var(hazard).mean;
    rep.rows.push_back(row);
  }
  return rep;
}

CltReport run_clt(const ExperimentConfig& cfg) {
  const auto pc = parse_and_validate(cfg, /*needs_v_grid=*/true);
  const double T = cfg.horizons.front();
  const std::int64_t reps = cfg.replications;
  const std::size_t nv = cfg.v_grid.size();
  const double sqrt_t = std::sqrt(T);

  const GridFunction en = extrapolated_mean_count(pc.model, pc.kernel, T, cfg.dt);

  std::vector<double> x(static_cast<std::size_t>(reps) * nv);
  std::vector<double> xdet(x.size());
  par::for_index(reps, [&](std::int64_t r) {
    RandomStream rng(cfg.seed, static_cast<std::uint64_t>(r));
    const auto path = simulate_path(cfg.engine, pc.model, pc.kernel, T, rng);
    for (std::size_t k = 0; k < nv; ++k) {
      const double v = cfg.v_grid[k];
      const double n = static_cast<double>(count(path, v * T));
      x[static_cast<std::size_t>(r) * nv + k] = (n - en.interp(v * T)) / sqrt_t;
      xdet[static_cast<std::size_t>(r) * nv + k] =
          n / sqrt_t - v * pc.constants.lln_slope * sqrt_t;
    }
  });

  // column means, then one shared pass for the covariance matrix; the
  // marginal variances are read off its diagonal
  std::vector<double> mean(nv, 0.0), mean_det(nv, 0.0);
  for (std::int64_t r = 0; r < reps; ++r)
    for (std::size_t k = 0; k < nv; ++k) {
      mean[k] += x[static_cast<std::size_t>(r) * nv + k];
      mean_det[k] += xdet[static_cast<std::size_t>(r) * nv + k];
    }
  for (std::size_t k = 0; k < nv; ++k) {
    mean[k] /= static_cast<double>(reps);
    mean_det[k] /= static_cast<double>(reps);
  }

  std::vector<std::vector<double>> cov(nv, std::vector<double>(nv, 0.0));
  std::vector<double> var_det(nv, 0.0);
  for (std::int64_t r = 0; r < reps; ++r) {
    const std::size_t base = static_cast<std::size_t>(r) * nv;
    for (std::size_t i = 0; i < nv; ++i) {
      const double di = x[base + i] - mean[i];
      for (std::size_t j = i; j < nv; ++j) cov[i][j] += di * (x[base + j] - mean[j]);
      const double dd = xdet[base + i] - mean_det[i];
      var_det[i] += dd * dd;
    }
  }
  const double denom = static_cast<double>(reps - 1);
  for (std::size_t i = 0; i < nv; ++i) {
    for (std::size_t j = i; j < nv; ++j) {
      cov[i][j] /= denom;
      cov[j][i] = cov[i][j];
    }
    var_det[i] /= denom;
  }

  CltReport out;
  out.constants = pc.constants;
  out.horizon = T;
  out.replications = cfg.replications;
  std::vector<double> column(reps);
  for (std::size_t k = 0; k < nv; ++k) {
    const double v = cfg.v_grid[k];
    CltMarginal mg;
    mg.v = v;
    mg.mean = mean[k];
    mg.variance = cov[k][k];
    mg.theo_variance = pc.constants.sigma2 * v;
    // Standardize by the sample moments so the distance measures shape only.
    // Location and scale are reported separately through mean and variance;
    // folding them into the distance would make it a joint test whose null
    // rejection rate depends on the replication count.
    const double sd = std::sqrt(cov[k][k]);
    for (std::int64_t r = 0; r < reps; ++r)
      column[r] = (x[static_cast<std::size_t>(r) * nv + k] - mean[k]) / sd;
    mg.ks = ks_statistic(column, [](double y) { return normal_cdf(y); });
    mg.ks_crit_1pct = ks_critical_value(0.01, static_cast<std::size_t>(reps));
    mg.mean_det = mean_det[k];
    mg.var_det = var_det[k];
    out.marginals.push_back(mg);
  }
  for (std::size_t i = 0; i < nv; ++i)
    for (std::size_t j = i; j < nv; ++j)
      out.covariance.push_back({cfg.v_grid[i], cfg.v_grid[j], cov[i][j],
                                pc.constants.sigma2 * cfg.v_grid[i]});
  out.cov_matrix = std::move(cov);
  return out;
}

VarfitReport run_variance_fit(const ExperimentConfig& cfg) {
  const auto pc = parse_and_validate(cfg);
  if (!(cfg.var_step > 0))
    throw std::invalid_argument("variance-fit step must be positive");
  const double T = cfg.horizons.front();
  const std::int64_t reps = cfg.replications;
  const std::size_t nt =
      static_cast<std::size_t>(std::floor(T / cfg.var_step + 1e-9));
  if (nt == 0)
    throw std::invalid_argument("variance-fit grid is empty; reduce the step");

  std::vector<double> times(nt);
  for (std::size_t k = 0; k < nt; ++k)
    times[k] = cfg.var_step * static_cast<double>(k + 1);

  // centering by E[N(t)] cancels in the sample variance, so raw counts do
  std::vector<double> counts(static_cast<std::size_t>(reps) * nt);
  par::for_index(reps, [&](std::int64_t r) {
    RandomStream rng(cfg.seed, static_cast<std::uint64_t>(r));
    const auto path = simulate_path(cfg.engine, pc.model, pc.kernel, T, rng);
    for (std::size_t k = 0; k < nt; ++k)
      counts[static_cast<std::size_t>(r) * nt + k] =
          static_cast<double>(count(path, std::min(times[k], T)));
  });

  VarfitReport out;
  out.constants = pc.constants;
  out.horizon = T;
  out.replications = cfg.replications;
  out.times = times;
  out.variances.resize(nt);
  std::vector<double> column(reps);
  for (std::size_t k = 0; k < nt; ++k) {
    for (std::int64_t r = 0; r < reps; ++r)
      column[r] = counts[static_cast<std::size_t>(r) * nt + k];
    out.variances[k] = sample_mean_var(column).variance;
  }
  out.slope = regression_through_origin(out.times, out.variances);
  out.rel_err = std::abs(out.slope - pc.constants.sigma2) / pc.constants.sigma2;
  return out;
}

EdgeReport run_edge_effects(const ExperimentConfig& cfg) {
  if (cfg.engine != Engine::Cluster)
    throw std::invalid_argument(
        "edge-effect accounting is only defined for the cluster engine");
  const auto pc = parse_and_validate(cfg);
  const std::int64_t reps = cfg.replications;

  EdgeReport out;
  out.constants = pc.constants;
  out.replications = cfg.replications;
  for (std::size_t ti = 0; ti < cfg.horizons.size(); ++ti) {
    const double T = cfg.horizons[ti];
    std::vector<double> frac(reps);
    par::for_index(reps, [&](std::int64_t r) {
      RandomStream rng(cfg.seed, static_cast<std::uint64_t>(ti) * reps + r);
      const auto path = simulate_rhp_cluster(pc.model, pc.kernel, T, rng);
      frac[r] = static_cast<double>(path.escaped_count) / T;
    });
    out.rows.push_back({T, sample_mean_var(frac).mean});
  }
  return out;
}

AgreeReport run_engine_agreement(const ExperimentConfig& cfg) {
  const auto pc = parse_and_validate(cfg);
  const double T = cfg.horizons.front();
  const std::int64_t reps = cfg.replications;

  std::vector<double> n_cluster(reps), n_thinning(reps);
  par::for_index(reps, [&](std::int64_t r) {
    RandomStream rng(cfg.seed, static_cast<std::uint64_t>(r));
    n_cluster[r] = static_cast<double>(
        simulate_rhp_cluster(pc.model, pc.kernel, T, rng).times.size());
  });
  par::for_index(reps, [&](std::int64_t r) {
    RandomStream rng(cfg.seed, static_cast<std::uint64_t>(reps + r));
    n_thinning[r] = static_cast<double>(
        simulate_rhp_thinning(pc.model, pc.kernel, T, rng).times.size());
  });

  const auto mc = sample_mean_var(n_cluster);
  const auto mt = sample_mean_var(n_thinning);
  AgreeReport out;
  out.constants = pc.constants;
  out.horizon = T;
  out.replications = cfg.replications;
  out.mean_cluster = mc.mean;
  out.mean_thinning = mt.mean;
  out.se_cluster = std::sqrt(mc.variance / static_cast<double>(reps));
  out.se_thinning = std::sqrt(mt.variance / static_cast<double>(reps));
  out.zstat = (mc.mean - mt.mean) /
              std::sqrt(out.se_cluster * out.se_cluster +
                        out.se_thinning * out.se_thinning);
  out.var_cluster = mc.variance;
  out.var_thinning = mt.variance;
  out.dispersion_ratio = std::log(mc.variance / mt.variance);
  out.dispersion_bound =
      kZ995 * std::sqrt(4.0 / static_cast<double>(reps - 1));
  out.pass_mean = std::abs(out.zstat) <= kZ995;
  out.pass_dispersion = std::abs(out.dispersion_ratio) <= out.dispersion_bound;
  out.pass = out.pass_mean && out.pass_dispersion;
  return out;
}

}  // namespace rhp
