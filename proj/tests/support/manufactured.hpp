#pragma once

#include "bzm/besov/trajectory.hpp"
#include "bzm/model/params.hpp"
#include "bzm/spectral/field.hpp"

namespace bzm::testing {

/// Smooth trigonometric solution of the forced system on the 2*pi torus:
///   rho = 1 + A cos t sin x cos y + A/2 sin 2t cos y
///   u = curl psi,  psi = U cos t sin x sin y + U/2 sin t cos x
///   pi = P cos t cos(x + y)
/// The forcing channels make it exact for the given diffusion law.
/// Spatial derivatives are spectral, time derivatives closed form.
class Manufactured {
 public:
  Manufactured(Grid grid, PhysicalParams params, double A = 0.1, double U = 0.2, double P = 0.1);

  Field rho(double t) const;
  Field drho_dt(double t) const;
  Field u(double t) const;
  Field du_dt(double t) const;
  Field grad_pi(double t) const;
  Field f_rho(double t) const;
  Field f_u(double t) const;

  /// Exact samples at t = 0, dt, ..., with forcing channels.
  Trajectory trajectory(double dt, int steps) const;

  const Grid& grid() const { return grid_; }
  const PhysicalParams& params() const { return params_; }

 private:
  Field velocity(double a, double b) const;  // curl of a sin x sin y + b cos x

  Grid grid_;
  PhysicalParams params_;
  double A_, U_, P_;
};

}  // namespace bzm::testing
