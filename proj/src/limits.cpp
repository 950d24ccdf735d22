#include "rhp/limits.hpp"

namespace rhp {

LimitConstants limit_constants(const InterarrivalModel& model,
                               const ExcitationKernel& kernel) {
  LimitConstants c;
  c.m = model.rate();
  c.alpha = kernel.branching_ratio();
  const double g = 1.0 - c.alpha;
  c.lln_slope = c.m / g;
  c.ew = 1.0 / g;
  c.varw = c.alpha / (g * g * g);
  c.sigma2_cluster = c.m * c.varw;
  c.sigma2_immigration =
      c.m * c.m * c.m * model.variance() * c.ew * c.ew;
  c.sigma2 = c.sigma2_cluster + c.sigma2_immigration;
  return c;
}

}  // namespace rhp
