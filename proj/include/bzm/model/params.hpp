#pragma once

#include <functional>
#include <limits>
#include <string>

namespace bzm {

enum class KappaForm { constant, fickian, power, custom };

/// Diffusion coefficient kappa(rho) together with its primitives
///   A(rho) = int_1^rho kappa,  B(rho) = -int_1^rho kappa(s)/s ds,
/// so that grad A = kappa grad rho = -rho grad B and A(1) = B(1) = 0.
struct KappaSpec {
  KappaForm form = KappaForm::constant;
  double kappa0 = 0.1;
  double m = 0.0;  // exponent of the power law kappa0 * rho^m
  std::function<double(double)> custom;
  // Densities outside [rho_lo, rho_hi] are rejected.
  double rho_lo = 0.0;
  double rho_hi = std::numeric_limits<double>::infinity();

  double operator()(double rho) const;
  double primitive_a(double rho) const;
  double primitive_b(double rho) const;
  bool admits(double rho) const { return rho > 0.0 && rho >= rho_lo && rho <= rho_hi && rho < std::numeric_limits<double>::infinity(); }
  std::string describe() const;

  static KappaSpec constant_kappa(double k0);
  static KappaSpec fickian(double k0);
  static KappaSpec power(double k0, double m);
  static KappaSpec custom_kappa(std::function<double(double)> fn, double lo, double hi);
};

/// Gas constants of the ideal-gas closure and the diffusion law.
struct PhysicalParams {
  double gamma = 1.4;
  double P0 = 1.0;
  double R_gas = 1.0;
  double C_v = 2.5;
  double C_p = 3.5;
  KappaSpec kappa;

  /// alpha = (gamma - 1) / (gamma P0).
  double alpha() const { return (gamma - 1.0) / (gamma * P0); }
  /// The same constant from the gas side, R / (C_p P0).
  double alpha_from_gas() const { return R_gas / (C_p * P0); }

  /// Throws Error(invalid_argument) when the constants are inconsistent
  /// (gamma <= 1, P0 <= 0, C_p != C_v + R, alpha mismatch above 1e-12).
  void validate() const;

  /// Builds C_v = R/(gamma - 1), C_p = gamma C_v.
  static PhysicalParams from_gas(double gamma, double P0, double R_gas, KappaSpec kappa);
};

/// Constants of the lifespan formula L / (1 + U0 + R0^ell).
struct LifespanParams {
  double L = 1.0;
  double ell = 7.0;
  double delta = 2.0;

  void validate() const;
};

}  // namespace bzm
