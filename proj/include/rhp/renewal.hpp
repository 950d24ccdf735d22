#pragma once

#include "rhp/grid.hpp"
#include "rhp/model.hpp"
#include "rhp/simulate.hpp"

namespace rhp {

// Solve Z = z + Z * F on the grid of z, where F has the (sub)probability
// density given by `density` and * is the convolution int_0^t Z(t-s) f(s) ds.
// Trapezoid forward substitution; the implicit diagonal term is folded into
// the divisor 1 - step*f(0)/2, which must stay positive.
GridFunction solve_renewal_equation(const GridFunction& z,
                                    const GridFunction& density);

// Density, kernel and unit tabulations on [0, T] with the given step.
GridFunction density_grid(const InterarrivalModel& model, double T, double dt);
GridFunction kernel_grid(const ExcitationKernel& kernel, double T, double dt);

// Renewal function Phi(t) = E[number of background points in [0, t]],
// counting the deterministic point at 0; Phi(0) = 1.
GridFunction renewal_function(const InterarrivalModel& model, double T, double dt);

// Offspring intensity psi = sum of n-fold self-convolutions of the kernel,
// n >= 1; solves the defective equation psi = h + psi * H.
GridFunction psi_function(const ExcitationKernel& kernel, double T, double dt);

// Mean count E[N(t)] = Phi(t) + int_0^t psi(t-s) Phi(s) ds.
GridFunction mean_count(const InterarrivalModel& model,
                        const ExcitationKernel& kernel, double T, double dt);

// Phi, psi and the mean count on one grid, shared across paths.
struct RenewalReferences {
  GridFunction phi;
  GridFunction psi;
  GridFunction mean;
};

RenewalReferences renewal_references(const InterarrivalModel& model,
                                     const ExcitationKernel& kernel, double T,
                                     double dt);

// Max-norm residual of the pathwise identity that reconstructs the centered
// count N(t) - E[N(t)] from the compensator-style functional
// A(t) = N(t) - sum_j H(t - T_j) - Phi(t) via X = A + psi * A.
// Shrinks roughly like the grid step; used as a solver cross-check.
double verify_linear_functional(const PointProcessPath& path,
                                const ExcitationKernel& kernel,
                                const RenewalReferences& refs);
double verify_linear_functional(const PointProcessPath& path,
                                const InterarrivalModel& model,
                                const ExcitationKernel& kernel, double dt);

}  // namespace rhp
