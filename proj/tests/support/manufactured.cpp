#include "manufactured.hpp"

#include <cmath>

#include "bzm/model/coefficients.hpp"
#include "bzm/spectral/operators.hpp"

namespace bzm::testing {

Manufactured::Manufactured(Grid grid, PhysicalParams params, double A, double U, double P)
    : grid_(std::move(grid)), params_(std::move(params)), A_(A), U_(U), P_(P) {}

Field Manufactured::rho(double t) const {
  const double a = A_ * std::cos(t), b = 0.5 * A_ * std::sin(2 * t);
  return Field::sample(grid_, 1, [=](auto x, int) { return 1.0 + a * std::sin(x[0]) * std::cos(x[1]) + b * std::cos(x[1]); });
}

Field Manufactured::drho_dt(double t) const {
  const double a = -A_ * std::sin(t), b = A_ * std::cos(2 * t);
  return Field::sample(grid_, 1, [=](auto x, int) { return a * std::sin(x[0]) * std::cos(x[1]) + b * std::cos(x[1]); });
}

Field Manufactured::velocity(double a, double b) const {
  // psi = a sin x sin y + b cos x; u = (d_y psi, -d_x psi, 0).
  return Field::sample(grid_, grid_.dim(), [=](auto x, int c) {
    if (c == 0) return a * std::sin(x[0]) * std::cos(x[1]);
    if (c == 1) return -(a * std::cos(x[0]) * std::sin(x[1]) - b * std::sin(x[0]));
    return 0.0;
  });
}

Field Manufactured::u(double t) const { return velocity(U_ * std::cos(t), 0.5 * U_ * std::sin(t)); }
Field Manufactured::du_dt(double t) const { return velocity(-U_ * std::sin(t), 0.5 * U_ * std::cos(t)); }

Field Manufactured::grad_pi(double t) const {
  const double p = -P_ * std::cos(t);
  return Field::sample(grid_, grid_.dim(), [=](auto x, int c) { return c < 2 ? p * std::sin(x[0] + x[1]) : 0.0; });
}

namespace {

Field transport(const Field& a, const Field& b) {
  Field out(b.grid(), b.components());
  for (int j = 0; j < a.grid().dim(); ++j) out += pointwise_multiply(a.component(j), partial(b, j));
  return out;
}

}  // namespace

Field Manufactured::f_rho(double t) const {
  const Field r = rho(t);
  const Coefficients c = coefficients_from_density(r, params_);
  return drho_dt(t) + transport(u(t), r) - divergence(pointwise_multiply(c.kappa, gradient(r)));
}

Field Manufactured::f_u(double t) const {
  const Field r = rho(t);
  const Field vel = u(t);
  const Coefficients c = coefficients_from_density(r, params_);
  const Field v = vel + gradient(c.b);
  const Field ga = gradient(c.a);
  Field flux = Field::vector(grid_);
  for (int i = 0; i < grid_.dim(); ++i) {
    Field acc = Field::scalar(grid_);
    for (int j = 0; j < grid_.dim(); ++j) acc += partial(pointwise_multiply(v.component(j), ga.component(i)), j);
    flux.set_component(i, acc);
  }
  return du_dt(t) + transport(v, vel) + pointwise_multiply(c.lambda, grad_pi(t)) - pointwise_multiply(c.lambda, flux);
}

Trajectory Manufactured::trajectory(double dt, int steps) const {
  Trajectory traj(grid_);
  for (int n = 0; n <= steps; ++n) {
    const double t = n * dt;
    traj.append(t, {{"rho", rho(t)}, {"u", u(t)}, {"grad_pi", grad_pi(t)}, {"f_rho", f_rho(t)}, {"f_u", f_u(t)}});
  }
  return traj;
}

}  // namespace bzm::testing
