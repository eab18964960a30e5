#pragma once

#include <functional>
#include <vector>

#include "bzm/spectral/field.hpp"

namespace bzm::testing {

/// 2D incompressible Euler in vorticity form, pseudo-spectral with the 2/3
/// rule, classical RK4. Works on raw FFTW transforms so it shares no code
/// with the solver under test. Returns the velocity at time T.
Field euler_reference(const Field& u0, double T, double dt);

/// 1D rho_t = (kappa(rho) rho_x)_x on [0, 2 pi) with n points, naive DFT
/// derivatives and RK4. Returns the samples at time T.
std::vector<double> diffusion_reference(const std::vector<double>& rho0, const std::function<double(double)>& kappa,
                                        double T, double dt);

}  // namespace bzm::testing
