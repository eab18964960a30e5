#pragma once

#include <functional>
#include <string>
#include <vector>

#include "bzm/besov/trajectory.hpp"
#include "bzm/model/params.hpp"
#include "bzm/solvers/linear.hpp"
#include "bzm/solvers/monitor.hpp"

namespace bzm {

using TimeForcing = std::function<Field(double)>;

struct EvolveOptions {
  double T = 0.5;
  double dt = 1e-3;  // shrunk so that T is a whole number of steps
  int stride = 4;
  double cfl_limit = 0.9;
  double max_principle_tol = 1e-6;  // checked only without density forcing
  TimeForcing f_rho;
  TimeForcing f_u;
  MonitorConfig monitor;
  bool stop_on_trigger = true;
  PressureOptions pressure;
};

enum class StopReason { completed, continuation_triggered };

std::string to_string(StopReason r);

struct EvolveResult {
  /// Channels rho, u, grad_pi (plus f_rho, f_u when forced) every `stride`
  /// steps and at the final time. Series: mass, div_inf, rho_min, rho_max,
  /// cfl, pressure_iterations and the monitor quantities.
  Trajectory traj;
  std::vector<MonitorSample> monitor;
  StopReason stop = StopReason::completed;
  double stop_time = 0.0;
  int steps = 0;
  double dt = 0.0;
};

/// Coupled step of the nonlinear system: density by integrating-factor Heun
/// with the mean diffusion exact, velocity by SSP-RK2 with a pressure solve at
/// each stage; coefficients and h are refreshed from the stage state.
/// Throws Error(density_bound_violation), Error(cfl_violation),
/// Error(pressure_nonconvergence).
EvolveResult evolve(const Field& rho0, const Field& u0, const PhysicalParams& params, const EvolveOptions& opts);

}  // namespace bzm
