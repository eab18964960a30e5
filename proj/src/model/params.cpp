#include "bzm/model/params.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <sstream>

#include "bzm/error.hpp"

namespace bzm {

namespace {

double integrate(const std::function<double(double)>& fn, double a, double b) {
  if (a == b) return 0.0;
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(fn, a, b, 15, 1e-13, &err);
}

}  // namespace

double KappaSpec::operator()(double rho) const {
  switch (form) {
    case KappaForm::constant: return kappa0;
    case KappaForm::fickian: return kappa0 / rho;
    case KappaForm::power: return kappa0 * std::pow(rho, m);
    case KappaForm::custom: return custom(rho);
  }
  return 0.0;
}

double KappaSpec::primitive_a(double rho) const {
  switch (form) {
    case KappaForm::constant: return kappa0 * (rho - 1.0);
    case KappaForm::fickian: return kappa0 * std::log(rho);
    case KappaForm::power:
      if (m == -1.0) return kappa0 * std::log(rho);
      return kappa0 * (std::pow(rho, m + 1.0) - 1.0) / (m + 1.0);
    case KappaForm::custom: return integrate(custom, 1.0, rho);
  }
  return 0.0;
}

double KappaSpec::primitive_b(double rho) const {
  switch (form) {
    case KappaForm::constant: return -kappa0 * std::log(rho);
    case KappaForm::fickian: return kappa0 * (1.0 / rho - 1.0);
    case KappaForm::power:
      if (m == 0.0) return -kappa0 * std::log(rho);
      return -kappa0 * (std::pow(rho, m) - 1.0) / m;
    case KappaForm::custom: {
      const auto& k = custom;
      return -integrate([&k](double s) { return k(s) / s; }, 1.0, rho);
    }
  }
  return 0.0;
}

std::string KappaSpec::describe() const {
  std::ostringstream os;
  switch (form) {
    case KappaForm::constant: os << "constant(kappa0=" << kappa0 << ")"; break;
    case KappaForm::fickian: os << "fickian(kappa0=" << kappa0 << ")"; break;
    case KappaForm::power: os << "power(kappa0=" << kappa0 << ",m=" << m << ")"; break;
    case KappaForm::custom: os << "custom"; break;
  }
  return os.str();
}

KappaSpec KappaSpec::constant_kappa(double k0) {
  KappaSpec k;
  k.form = KappaForm::constant;
  k.kappa0 = k0;
  return k;
}

KappaSpec KappaSpec::fickian(double k0) {
  KappaSpec k;
  k.form = KappaForm::fickian;
  k.kappa0 = k0;
  return k;
}

KappaSpec KappaSpec::power(double k0, double m) {
  KappaSpec k;
  k.form = KappaForm::power;
  k.kappa0 = k0;
  k.m = m;
  return k;
}

KappaSpec KappaSpec::custom_kappa(std::function<double(double)> fn, double lo, double hi) {
  KappaSpec k;
  k.form = KappaForm::custom;
  k.custom = std::move(fn);
  k.rho_lo = lo;
  k.rho_hi = hi;
  return k;
}

void PhysicalParams::validate() const {
  if (!(gamma > 1.0)) throw Error(ErrorKind::invalid_argument, "gamma must exceed 1");
  if (!(P0 > 0.0)) throw Error(ErrorKind::invalid_argument, "P0 must be positive");
  if (!(R_gas > 0.0) || !(C_v > 0.0)) throw Error(ErrorKind::invalid_argument, "gas constants must be positive");
  if (std::abs(C_p - (C_v + R_gas)) > 1e-12 * C_p) {
    throw Error(ErrorKind::invalid_argument, "C_p must equal C_v + R");
  }
  if (std::abs(alpha() - alpha_from_gas()) > 1e-12 * alpha()) {
    throw Error(ErrorKind::invalid_argument, "(gamma-1)/(gamma P0) disagrees with R/(C_p P0)");
  }
  if (kappa.form != KappaForm::custom && !(kappa.kappa0 > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "kappa0 must be positive");
  }
  if (kappa.form == KappaForm::custom && !kappa.custom) {
    throw Error(ErrorKind::invalid_argument, "custom kappa needs a function");
  }
}

PhysicalParams PhysicalParams::from_gas(double gamma, double P0, double R_gas, KappaSpec kappa) {
  PhysicalParams p;
  p.gamma = gamma;
  p.P0 = P0;
  p.R_gas = R_gas;
  p.C_v = R_gas / (gamma - 1.0);
  p.C_p = gamma * p.C_v;
  p.kappa = std::move(kappa);
  p.validate();
  return p;
}

void LifespanParams::validate() const {
  if (!(L > 0.0)) throw Error(ErrorKind::invalid_argument, "L must be positive");
  if (!(ell > 6.0)) throw Error(ErrorKind::invalid_argument, "ell must exceed 6");
  if (!(delta > 1.0)) throw Error(ErrorKind::invalid_argument, "delta must exceed 1");
}

}  // namespace bzm
