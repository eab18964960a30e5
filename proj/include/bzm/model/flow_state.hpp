#pragma once

#include <memory>

#include "bzm/model/coefficients.hpp"

namespace bzm {

/// Density, velocity and pressure gradient with the coefficient fields and the
/// source h derived once at construction. A FlowState never changes afterwards.
class FlowState {
 public:
  FlowState() = default;
  /// grad_pi may be empty (taken as zero).
  static FlowState make(Field rho, Field u, Field grad_pi, const PhysicalParams& params);

  const Grid& grid() const { return rho_.grid(); }
  const Field& rho() const { return rho_; }
  const Field& u() const { return u_; }
  const Field& grad_pi() const { return grad_pi_; }
  const PhysicalParams& params() const { return params_; }
  const Coefficients& coefficients() const;
  const Field& h() const;
  double h_form_difference() const;

  double rho_min() const;
  double rho_max() const;
  double divergence_norm() const;  // ||div u||_inf

 private:
  struct Derived;
  Field rho_, u_, grad_pi_;
  PhysicalParams params_;
  std::shared_ptr<const Derived> derived_;
};

struct SourceTerm {
  Field compact;
  Field expanded;
  double relative_difference = 0.0;  // ||compact - expanded||_2 / max(||compact||_2, tiny)
};

/// h = rho^{-1} div(v (x) grad a), v = u + grad b, in compact and expanded form.
SourceTerm source_h_forms(const Field& rho, const Field& u, const Coefficients& coeffs);

/// Compact form. Throws Error(missing_coefficients) on an empty state.
Field source_h(const FlowState& state);

struct VelocitySplit {
  Field u;
  Field q_part;
  double compatibility_residual = 0.0;
};

VelocitySplit velocity_split(const Field& v, const Field& rho, const PhysicalParams& params);

/// v = u + grad b; throws Error(non_solenoidal) when ||div u||_inf > 1e-8.
Field velocity_join(const Field& u, const Field& b);

/// L / (1 + U0 + R0^ell).
double lifespan_lower_bound(double U0, double R0, const LifespanParams& lp);

/// (rho, u, grad pi)(t, x) -> (rho, u/eps, grad pi/eps^3)(t/eps^2, x/eps) for
/// eps = 2^-m, sampled on the grid with N/eps points. Throws Error(incompatible_eps).
FlowState rescale_state(const FlowState& state, double eps);

/// Resamples one field f(x) -> factor * f(x/eps) onto the refined grid.
Field rescale_field(const Field& f, double eps, double factor);

}  // namespace bzm
