#pragma once

#include <cstdint>
#include <vector>

#include "rhp/model.hpp"
#include "rhp/random.hpp"

namespace rhp {

enum class Engine { Cluster, Thinning };

// One realization on [0, horizon]. times is strictly increasing and starts
// at the deterministic background point 0; flags[i] is 0 for a background
// (renewal) point and 1 for an offspring point. escaped_count records
// first-generation children the cluster engine placed beyond the horizon
// and therefore neither kept nor expanded; the kept part of the path is
// exact on [0, horizon] because children always land after their parent.
struct PointProcessPath {
  std::vector<double> times;
  std::vector<std::uint8_t> flags;
  double horizon = 0.0;
  std::uint64_t escaped_count = 0;
  Engine engine = Engine::Cluster;
};

// N(t): number of points at or before t. Requires 0 <= t <= horizon.
std::size_t count(const PointProcessPath& path, double t);

// Index of the latest background point at or before t; index 0 (the point
// at time 0) is the floor. Requires t >= 0.
std::size_t last_immigrant_index(const PointProcessPath& path, double t);

// Conditional intensity hazard(t - S_last) + sum of kernel values over
// points strictly before t. Requires 0 <= t <= horizon.
double intensity_at(const PointProcessPath& path, const InterarrivalModel& model,
                    const ExcitationKernel& kernel, double t);

// Background renewal epochs 0 = S_0 < S_1 < ... <= horizon.
std::vector<double> simulate_renewal(const InterarrivalModel& model,
                                     double horizon, RandomStream& rng);

struct ClusterResult {
  std::vector<double> descendants;  // strictly after t0, within the horizon
  std::uint64_t escaped = 0;        // children beyond the horizon, not expanded
};

// All descendants of an ancestor at t0 via breadth-first branching.
// generation_cap guards against runaway growth and throws when exceeded.
ClusterResult simulate_cluster(const ExcitationKernel& kernel, double t0,
                               double horizon, RandomStream& rng,
                               std::size_t generation_cap = 10000);

// Branching construction: renewal background, one cluster per background point.
PointProcessPath simulate_rhp_cluster(const InterarrivalModel& model,
                                      const ExcitationKernel& kernel,
                                      double horizon, RandomStream& rng);

// Thinning construction: dominate the intensity on a lookahead window by
// hazard_sup plus a monotone excitation bound, accept proposals with
// probability intensity/bound. The window shrinks when acceptance gets poor.
// Models whose hazard is unbounded at 0 (Weibull shape < 1) are rejected.
PointProcessPath simulate_rhp_thinning(const InterarrivalModel& model,
                                       const ExcitationKernel& kernel,
                                       double horizon, RandomStream& rng,
                                       double initial_window = 1.0);

PointProcessPath simulate_path(Engine engine, const InterarrivalModel& model,
                               const ExcitationKernel& kernel, double horizon,
                               RandomStream& rng);

}  // namespace rhp
