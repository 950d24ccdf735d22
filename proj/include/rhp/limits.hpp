#pragma once

#include "rhp/model.hpp"

namespace rhp {

// Long-run constants of the process. lln_slope is the almost-sure linear
// growth rate of N(t); sigma2 the variance rate in the functional normal
// limit, split into the cluster-size part and the background-variability
// part (sigma2 = sigma2_cluster + sigma2_immigration by construction).
// ew and varw are the mean and variance of a total cluster size.
struct LimitConstants {
  double m = 0.0;      // background renewal rate, 1/E[interarrival]
  double alpha = 0.0;  // branching ratio
  double lln_slope = 0.0;
  double sigma2 = 0.0;
  double sigma2_cluster = 0.0;
  double sigma2_immigration = 0.0;
  double ew = 0.0;
  double varw = 0.0;
};

LimitConstants limit_constants(const InterarrivalModel& model,
                               const ExcitationKernel& kernel);

}  // namespace rhp
