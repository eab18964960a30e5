#pragma once

#include <vector>

#include "bzm/besov/besov_params.hpp"
#include "bzm/besov/trajectory.hpp"
#include "bzm/model/params.hpp"
#include "bzm/solvers/linear.hpp"

namespace bzm {

struct PicardOptions {
  double T_star = 0.1;
  int n_max = 10;
  double dt = 2.5e-3;  // shrunk so that T_star is a whole number of steps
  double p = 2.0;      // difference norms use B^{d/p}_{p,1}
  double stop_below = 1e-10;
  double stagnation_ratio = 0.95;
  int stagnation_count = 3;
  double max_principle_tol = 1e-6;
  DensityScheme scheme = DensityScheme::imex;
};

struct IterationRecord {
  int n = 0;
  double B = 0.0;  // sum of the five difference norms below
  double delta_rho = 0.0;     // L^inf_T(B^{d/p}_{p,1})
  double delta_rho_l1 = 0.0;  // L^1_T(B^{d/p+2}_{p,1})
  double delta_u = 0.0;       // L~^inf_T(B^{d/p}_{p,1})
  double delta_grad_pi = 0.0; // L^1_T(B^{d/p}_{p,1})
  double delta_grad_pi_l2 = 0.0;  // L^1_T(L^2)
  double R = 0.0;  // L^inf_T(B^{d/p}_{p,1}) of rho^n - 1
  double S = 0.0;  // L^1_T(B^{d/p+2}_{p,1}) of rho^n - 1
  double U = 0.0;  // L^inf_T(B^{d/p}_{p,1}) of u^n
  double rho_bar = 0.0;  // L^inf_T(B^{d/p}_{p,1}) of rho^n - 1 - S_n rho_L
  double wall_seconds = 0.0;
};

struct PicardResult {
  /// Iterate n sampled at every time step; channels rho, u, grad_pi.
  std::vector<Trajectory> iterates;
  /// One record per completed iteration n >= 1.
  std::vector<IterationRecord> records;
  bool converged = false;
  bool stagnated = false;
  double dt = 0.0;
};

/// Linearised iteration: iterate n solves the transport-diffusion and
/// transport-pressure problems with coefficients taken from iterate n - 1 at
/// the same times, starting from (1 + S_n(rho0 - 1), S_n u0). Iterate 0 is the
/// constant-in-time (1 + S_0(rho0 - 1), S_0 u0, 0).
/// Throws Error(density_bound_violation), Error(cfl_violation).
PicardResult picard_driver(const Field& rho0, const Field& u0, const PhysicalParams& params, const PicardOptions& opts);

}  // namespace bzm
