#pragma once

#include <vector>

#include "bzm/solvers/evolve.hpp"

namespace bzm {

struct LifespanStudyOptions {
  double horizon = 0.5;  // the run covers max(horizon, lower bound)
  double dt = 2e-3;
  int stride = 4;
  double C_E = 1.0;  // constant in E(t) = exp(C_E int (1 + U))
  double parabolic_p = 2.0;
  MonitorConfig monitor;  // monitor.lifespan holds L, ell, delta
};

struct LifespanReport {
  double U0 = 0.0, R0 = 0.0;  // B^{1+d/4}_{4,1} norms of u0 and rho0 - 1
  double bound = 0.0;         // L / (1 + U0 + R0^ell)
  double run_horizon = 0.0;
  std::vector<double> t, R, S, U, E;
  double T_R = inf;  // first time int R^3 > 2 R0; inf if never
  double T_U = inf;  // first time E > 2 or the U integral condition fails
  StopReason stop = StopReason::completed;
  double stop_time = 0.0;
  double stable_horizon = 0.0;  // min(T_R, T_U, stop time)
  bool regular_until_bound = false;
  /// Per block j >= 0: min over snapshots of
  ///   -int div(kappa grad rho_j) |rho_j|^{p-2} rho_j / (2^{2j} int |rho_j|^p);
  /// zero for blocks that carry no energy.
  std::vector<double> parabolic_constant;
};

LifespanReport lifespan_study(const Field& rho0, const Field& u0, const PhysicalParams& params,
                              const LifespanStudyOptions& opts);

/// The per-block parabolic constant of one density snapshot (see above).
std::vector<double> parabolic_probe(const Field& rho, const PhysicalParams& params, double p);

}  // namespace bzm
