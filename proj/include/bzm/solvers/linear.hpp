#pragma once

#include "bzm/spectral/field.hpp"

namespace bzm {

struct PressureResult {
  Field grad_pi;
  Field pi;  // mean zero
  int iterations = 0;
  double residual = 0.0;  // ||div(lambda grad pi) - div F||_2 / ||div F||_2
  bool energy_bound = true;  // lambda_min ||grad pi||_2 <= (1 + 1e-8) ||F||_2
};

struct PressureOptions {
  double tolerance = 1e-12;
  double accept = 1e-10;
  int max_iterations = 200;
};

/// Solves div(lambda grad pi) = div F by preconditioned conjugate gradients,
/// preconditioned with the inverse of mean(lambda) times the Laplacian.
/// Throws Error(lambda_degenerate) or Error(pressure_nonconvergence).
PressureResult pressure_solve(const Field& lambda, const Field& F, const PressureOptions& opts = {});

/// Largest of dt * sum_i |w_i| / dx over the grid.
double cfl_number(const Field& drift, double dt);
/// Throws Error(cfl_violation) when cfl_number > limit.
void check_cfl(const Field& drift, double dt, double limit = 0.9);

enum class DensityScheme { imex, fully_spectral_picard };

/// Frozen coefficients of the density equation
///   d_t rho + drift . grad rho - div(kappa grad rho) = forcing.
struct DensityCoefficients {
  Field drift;
  Field kappa;
  Field forcing;  // may be empty
};

/// Explicit part -drift . grad rho + div((kappa - kappa_bar) grad rho) + forcing,
/// dealiased.
Field density_explicit(const Field& rho, const DensityCoefficients& c, double kappa_bar);

/// One step over [t, t + dt] with coefficients `start` at t and `end` at t + dt.
/// imex: integrating-factor Heun with kappa_bar = mean of start.kappa.
/// fully_spectral_picard: Crank-Nicolson solved by fixed-point iteration
/// preconditioned with the mean diffusion.
/// Throws Error(kappa_degenerate) or Error(cfl_violation).
Field density_step(const Field& rho_in, const DensityCoefficients& start, const DensityCoefficients& end, double dt,
                   DensityScheme scheme = DensityScheme::imex);

/// Same with time-independent coefficients.
Field density_step(const Field& rho_in, const Field& u_drift, const Field& kappa, const Field& f, double dt,
                   DensityScheme scheme = DensityScheme::imex);

/// Frozen coefficients of d_t u + drift . grad u + lambda grad pi = h + forcing.
struct VelocityCoefficients {
  Field drift;
  Field lambda;
  Field h;        // may be empty
  Field forcing;  // may be empty
};

struct VelocityRate {
  Field rate;  // G - lambda grad pi, divergence-free
  Field grad_pi;
  int iterations = 0;
};

/// G = h + forcing - drift . grad u (dealiased), then the pressure that makes
/// G - lambda grad pi solenoidal.
VelocityRate velocity_rate(const Field& u, const VelocityCoefficients& c, const PressureOptions& popts = {});

struct VelocityStep {
  Field u_out;
  Field grad_pi;  // average over the two stages
};

/// SSP-RK2 with a pressure solve per stage and a closing Leray projection.
/// Throws Error(non_solenoidal), Error(cfl_violation) or Error(pressure_nonconvergence).
VelocityStep velocity_step(const Field& u_in, const VelocityCoefficients& start, const VelocityCoefficients& end,
                           double dt);

VelocityStep velocity_step(const Field& u_in, const Field& drift, const Field& lambda, const Field& h, double dt);

}  // namespace bzm
