#pragma once

#include <cstddef>

#include "bzm/besov/trajectory.hpp"
#include "bzm/model/params.hpp"

namespace bzm {

/// L2 norms (unit volume) of the equation residuals at one stored time.
struct SystemResidual {
  double density = 0.0;
  double momentum = 0.0;       // d_t u + v.grad u + lambda grad pi - h - f_u
  double momentum_pre = 0.0;   // rho d_t u + rho v.grad u + grad pi - div(v (x) grad a) - rho f_u
  double form_difference = 0.0;  // ||lambda * pre-form - lambda-form||
  double divergence = 0.0;
  // Residuals divided by the sum of the norms of the individual terms.
  double density_relative = 0.0;
  double momentum_relative = 0.0;
};

/// Needs channels rho, u, grad_pi; optional forcing channels f_rho, f_u.
/// Time derivatives are centred differences, so 1 <= index <= size - 2.
/// Throws Error(insufficient_samples).
SystemResidual system_residual(const Trajectory& traj, std::size_t index, const PhysicalParams& params);

/// Rescales every sample and stored time of a trajectory: times * eps^2,
/// rho, f_rho * eps^-2, u * eps^-1, grad_pi and f_u * eps^-3.
Trajectory rescale_trajectory(const Trajectory& traj, double eps);

}  // namespace bzm
