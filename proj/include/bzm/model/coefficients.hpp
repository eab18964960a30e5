#pragma once

#include "bzm/model/params.hpp"
#include "bzm/spectral/field.hpp"

namespace bzm {

struct Coefficients {
  Field kappa;
  Field lambda;
  Field a;
  Field b;
  double grad_a_residual = 0.0;   // ||grad a - kappa grad rho||_2
  double grad_ab_residual = 0.0;  // ||grad a + rho grad b||_2
};

/// Throws Error(density_out_of_range) if some sample is non-positive, non-finite
/// or outside the validity interval of params.kappa.
void check_density(const Field& rho, const KappaSpec& kappa);

Coefficients coefficients_from_density(const Field& rho, const PhysicalParams& params);

}  // namespace bzm
