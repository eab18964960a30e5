#include "bzm/solvers/lifespan.hpp"

#include <algorithm>
#include <cmath>

#include "bzm/besov/norms.hpp"
#include "bzm/model/coefficients.hpp"
#include "bzm/model/flow_state.hpp"
#include "bzm/spectral/littlewood_paley.hpp"
#include "bzm/spectral/operators.hpp"

namespace bzm {

std::vector<double> parabolic_probe(const Field& rho, const PhysicalParams& params, double p) {
  const Coefficients c = coefficients_from_density(rho, params);
  const Grid& g = rho.grid();
  std::vector<double> out;
  const double total = std::max(lebesgue_norm(rho - Field::constant(g, mean(rho)), p), 1e-300);
  for (int j = 0; j <= g.max_block(); ++j) {
    const Field b = dyadic_block(rho, j);
    const Field flux = divergence(pointwise_multiply(c.kappa, gradient(b)));
    auto x = b.samples();
    auto y = flux.samples();
    double lhs = 0.0, mass = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double a = std::abs(x[i]);
      const double w = std::pow(a, p - 2.0) * x[i];
      lhs -= y[i] * w;
      mass += std::pow(a, p);
    }
    lhs /= static_cast<double>(x.size());
    mass /= static_cast<double>(x.size());
    // Blocks far below the field's own size are rounding noise.
    const bool empty = std::pow(mass, 1.0 / p) <= 1e-10 * total;
    out.push_back(empty ? 0.0 : lhs / (std::pow(4.0, j) * mass));
  }
  return out;
}

LifespanReport lifespan_study(const Field& rho0, const Field& u0, const PhysicalParams& params,
                              const LifespanStudyOptions& opts) {
  const Grid& g = rho0.grid();
  const int d = g.dim();
  const BesovParams space{1.0 + d / 4.0, 4.0, 1.0};
  const BesovParams high{3.0 + d / 4.0, 4.0, 1.0};
  const LifespanParams& lp = opts.monitor.lifespan;
  const Field one = Field::constant(g, 1.0);

  LifespanReport rep;
  rep.U0 = besov_norm(u0, space);
  rep.R0 = besov_norm(rho0 - one, space);
  rep.bound = lifespan_lower_bound(rep.U0, rep.R0, lp);
  rep.run_horizon = std::max(opts.horizon, rep.bound);

  EvolveOptions eo;
  eo.T = rep.run_horizon;
  eo.dt = opts.dt;
  eo.stride = opts.stride;
  eo.monitor = opts.monitor;
  const EvolveResult run = evolve(rho0, u0, params, eo);
  rep.stop = run.stop;
  rep.stop_time = run.stop_time;

  const double Rpow = std::pow(rep.R0, lp.delta + 4.0);
  double intR3 = 0.0, intS = 0.0, intE = 0.0, intU = 0.0;
  double Rsup = 0.0, Usup = 0.0;
  double prevS = 0.0;
  rep.parabolic_constant.assign(g.max_block() + 1, inf);
  for (std::size_t k = 0; k < run.traj.size(); ++k) {
    const double t = run.traj.times()[k];
    const Field vr = run.traj.at(k, "rho") - one;
    const double r = besov_norm(vr, space);
    const double s = besov_norm(vr, high);
    const double u = besov_norm(run.traj.at(k, "u"), space);
    Rsup = std::max(Rsup, r);
    Usup = std::max(Usup, u);
    if (k > 0) {
      const double h = t - rep.t.back();
      intR3 += 0.5 * h * (std::pow(rep.R.back(), 3) + std::pow(Rsup, 3));
      intS += 0.5 * h * (prevS + s);
      intE += 0.5 * h * (2.0 + rep.U.back() + Usup);
      intU += 0.5 * h * (rep.U.back() + rep.U.back() * rep.U.back() + Usup + Usup * Usup);
    }
    prevS = s;
    rep.t.push_back(t);
    rep.R.push_back(Rsup);
    rep.S.push_back(intS);
    rep.U.push_back(Usup);
    rep.E.push_back(std::exp(opts.C_E * intE));
    if (!std::isfinite(rep.T_R) && intR3 > 2.0 * rep.R0) rep.T_R = t;
    if (!std::isfinite(rep.T_U) && (rep.E.back() > 2.0 || (1.0 + Rpow) * intU > 2.0 * (1.0 + rep.U0 + Rpow))) rep.T_U = t;

    const auto pc = parabolic_probe(run.traj.at(k, "rho"), params, opts.parabolic_p);
    for (std::size_t j = 0; j < pc.size(); ++j) {
      if (pc[j] != 0.0) rep.parabolic_constant[j] = std::min(rep.parabolic_constant[j], pc[j]);
    }
  }
  for (double& c : rep.parabolic_constant) {
    if (!std::isfinite(c)) c = 0.0;
  }
  rep.stable_horizon = std::min({rep.T_R, rep.T_U, rep.stop_time});
  rep.regular_until_bound = run.stop == StopReason::completed || run.stop_time >= rep.bound;
  return rep;
}

}  // namespace bzm
