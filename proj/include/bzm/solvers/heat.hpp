#pragma once

#include "bzm/besov/besov_params.hpp"
#include "bzm/spectral/field.hpp"

namespace bzm {

/// e^{t Delta} f, exact on the grid. Throws Error(negative_time).
Field heat_semigroup(const Field& f, double t);

struct HeatSmallness {
  double T_star = 0.0;
  double l2_norm = 0.0;  // L~2_{T*}(B^{s+1}_{p,r}) of the heat flow
  double l1_norm = 0.0;  // L~1_{T*}(B^{s+2}_{p,r})
};

struct HeatSmallnessOptions {
  double horizon = 1.0;
  int nodes = 512;  // quadratically clustered time nodes on [0, horizon]
};

/// Largest node time T* at which both Chemin-Lerner norms of the heat flow of
/// the perturbation rho0 stay <= tau^2. The norms grow with T*, so every
/// earlier time is admissible too. Throws Error(unreachable_target) when even
/// the first nonzero node fails; the message reports the achieved norms.
HeatSmallness heat_smallness_time(const Field& rho0, double tau, const BesovParams& params,
                                  const HeatSmallnessOptions& opts = {});

}  // namespace bzm
