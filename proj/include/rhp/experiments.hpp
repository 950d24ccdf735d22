#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rhp/limits.hpp"
#include "rhp/simulate.hpp"

namespace rhp {

// Shared Monte Carlo configuration. Replications run in parallel on
// per-replication random streams and are aggregated in index order, so every
// result is a pure function of this struct regardless of thread count.
struct ExperimentConfig {
  std::string model_spec = "exp:1";
  std::string kernel_spec = "expk:0.5,1";
  Engine engine = Engine::Cluster;
  std::vector<double> horizons{500.0};   // T values; single-T runs use front()
  std::vector<double> v_grid;            // fractions of T in (0, 1]
  int replications = 100;
  std::uint64_t seed = 42;
  double dt = 0.01;        // grid step for theoretical centering curves
  double var_step = 1.0;   // time spacing of the variance-fit grid
};

struct LlnRow {
  double horizon = 0.0;
  double mean_sup_dev = 0.0;   // mean over paths of sup_v |N(vT)/T - v*slope|
  double median_sup_dev = 0.0;
  double max_sup_dev = 0.0;
  double hazard_avg = 0.0;     // mean of T^{-1} * integrated background hazard
};

struct LlnReport {
  LimitConstants constants;
  std::vector<LlnRow> rows;
};

struct CltMarginal {
  double v = 0.0;
  double mean = 0.0;          // of X(v) = (N(vT) - E[N(vT)])/sqrt(T)
  double variance = 0.0;
  double theo_variance = 0.0; // sigma2 * v
  double ks = 0.0;            // sample-standardized X(v) against the normal CDF
  double ks_crit_1pct = 0.0;
  double mean_det = 0.0;      // deterministic centering by the LLN line
  double var_det = 0.0;
};

struct CltCovEntry {
  double u = 0.0, v = 0.0;
  double empirical = 0.0;
  double theoretical = 0.0;  // sigma2 * min(u, v)
};

struct CltReport {
  LimitConstants constants;
  double horizon = 0.0;
  int replications = 0;
  std::vector<CltMarginal> marginals;
  std::vector<CltCovEntry> covariance;          // pairs u <= v
  std::vector<std::vector<double>> cov_matrix;  // full symmetric matrix
};

struct VarfitReport {
  LimitConstants constants;
  double horizon = 0.0;
  int replications = 0;
  std::vector<double> times;
  std::vector<double> variances;  // sample variance of N(t) across paths
  double slope = 0.0;             // through-origin fit of variances vs times
  double rel_err = 0.0;           // |slope - sigma2| / sigma2
};

struct EdgeRow {
  double horizon = 0.0;
  double escaped_fraction = 0.0;  // mean of escaped_count / T
};

struct EdgeReport {
  LimitConstants constants;
  int replications = 0;
  std::vector<EdgeRow> rows;
};

struct AgreeReport {
  LimitConstants constants;
  double horizon = 0.0;
  int replications = 0;  // per engine
  double mean_cluster = 0.0, mean_thinning = 0.0;
  double se_cluster = 0.0, se_thinning = 0.0;
  double zstat = 0.0;  // two-sample z for the mean of N(T)
  double var_cluster = 0.0, var_thinning = 0.0;
  double dispersion_ratio = 0.0;  // log variance ratio
  double dispersion_bound = 0.0;  // 1% two-sided bound for the log ratio
  bool pass_mean = false, pass_dispersion = false, pass = false;
};

LlnReport run_lln(const ExperimentConfig& cfg);
CltReport run_clt(const ExperimentConfig& cfg);
VarfitReport run_variance_fit(const ExperimentConfig& cfg);
EdgeReport run_edge_effects(const ExperimentConfig& cfg);  // cluster engine only
AgreeReport run_engine_agreement(const ExperimentConfig& cfg);

// Default fraction grid 0.05, 0.10, ..., 1.00.
std::vector<double> default_v_grid();

}  // namespace rhp
