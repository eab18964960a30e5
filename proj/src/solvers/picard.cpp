#include "bzm/solvers/picard.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "bzm/besov/norms.hpp"
#include "bzm/error.hpp"
#include "bzm/model/flow_state.hpp"
#include "bzm/solvers/heat.hpp"
#include "bzm/spectral/littlewood_paley.hpp"
#include "bzm/spectral/operators.hpp"

namespace bzm {

namespace {

struct Frozen {
  DensityCoefficients density;
  VelocityCoefficients velocity;
};

std::vector<Frozen> freeze(const Trajectory& prev, const PhysicalParams& params) {
  std::vector<Frozen> out(prev.size());
  for (std::size_t k = 0; k < prev.size(); ++k) {
    const Field& rho = prev.at(k, "rho");
    const Field& u = prev.at(k, "u");
    const Coefficients c = coefficients_from_density(rho, params);
    out[k].density = {u, c.kappa, {}};
    out[k].velocity = {u + gradient(c.b), c.lambda, source_h_forms(rho, u, c).compact, {}};
  }
  return out;
}

Trajectory difference(const Trajectory& a, const Trajectory& b) {
  Trajectory d(a.grid());
  for (std::size_t k = 0; k < a.size(); ++k) {
    Trajectory::Channels ch;
    for (const char* name : {"rho", "u", "grad_pi"}) ch.emplace(name, a.at(k, name) - b.at(k, name));
    d.append(a.times()[k], std::move(ch));
  }
  return d;
}

}  // namespace

PicardResult picard_driver(const Field& rho0, const Field& u0, const PhysicalParams& params, const PicardOptions& opts) {
  params.validate();
  if (!(opts.T_star > 0.0) || !(opts.dt > 0.0) || opts.n_max < 1) throw Error(ErrorKind::invalid_argument, "need T* > 0, dt > 0, n_max >= 1");
  check_density(rho0, params.kappa);
  const double div0 = lebesgue_norm(divergence(u0), inf);
  if (div0 > 1e-8) throw Error(ErrorKind::non_solenoidal, "||div u0||_inf = " + std::to_string(div0));

  const Grid& g = rho0.grid();
  const int d = g.dim();
  const int steps = static_cast<int>(std::ceil(opts.T_star / opts.dt - 1e-9));
  const double dt = opts.T_star / steps;
  const Field one = Field::constant(g, 1.0);
  const Field vrho0 = rho0 - one;
  const double kappa1 = params.kappa(1.0);
  const BesovParams crit{d / opts.p, opts.p, 1.0};
  const BesovParams crit2{d / opts.p + 2.0, opts.p, 1.0};

  PicardResult res;
  res.dt = dt;
  {
    Trajectory it0(g);
    const Field r = one + low_pass(vrho0, 0);
    const Field u = low_pass(u0, 0);
    for (int k = 0; k <= steps; ++k) it0.append(k * dt, {{"rho", r}, {"u", u}, {"grad_pi", Field::vector(g)}});
    res.iterates.push_back(std::move(it0));
  }

  int stagnant = 0;
  for (int n = 1; n <= opts.n_max; ++n) {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<Frozen> frozen = freeze(res.iterates.back(), params);
    Field rho = one + low_pass(vrho0, n);
    Field u = low_pass(u0, n);
    const double lo = min_sample(rho) - opts.max_principle_tol;
    const double hi = max_sample(rho) + opts.max_principle_tol;

    Trajectory it(g);
    for (int k = 0;; ++k) {
      const VelocityRate r0 = velocity_rate(u, frozen[k].velocity);
      it.append(k * dt, {{"rho", rho}, {"u", u}, {"grad_pi", r0.grad_pi}});
      if (k == steps) break;
      check_cfl(frozen[k].velocity.drift, dt);
      Field rho_next = density_step(rho, frozen[k].density, frozen[k + 1].density, dt, opts.scheme);
      Field u1 = u;
      u1.axpy(dt, r0.rate);
      const VelocityRate r1 = velocity_rate(u1, frozen[k + 1].velocity);
      Field u_next = u + u1;
      u_next.axpy(dt, r1.rate);
      u_next *= 0.5;
      rho = std::move(rho_next);
      u = leray_project(u_next);
      const double mn = min_sample(rho), mx = max_sample(rho);
      if (mn < lo || mx > hi) {
        std::ostringstream os;
        os << "iterate " << n << ": density range [" << mn << ", " << mx << "] left [" << lo << ", " << hi
           << "] at t = " << (k + 1) * dt;
        throw Error(ErrorKind::density_bound_violation, os.str());
      }
    }

    const Trajectory delta = difference(it, res.iterates.back());
    IterationRecord rec;
    rec.n = n;
    rec.delta_rho = time_besov_norm(delta, "rho", inf, crit);
    rec.delta_rho_l1 = time_besov_norm(delta, "rho", 1.0, crit2);
    rec.delta_u = chemin_lerner_norm(delta, "u", inf, crit);
    rec.delta_grad_pi = time_besov_norm(delta, "grad_pi", 1.0, crit);
    {
      std::vector<double> l2(delta.size());
      for (std::size_t k = 0; k < delta.size(); ++k) l2[k] = lebesgue_norm(delta.at(k, "grad_pi"), 2.0);
      rec.delta_grad_pi_l2 = time_lq_norm(delta.times(), l2, 1.0);
    }
    rec.B = rec.delta_rho + rec.delta_rho_l1 + rec.delta_u + rec.delta_grad_pi + rec.delta_grad_pi_l2;

    Trajectory pert(g);
    for (std::size_t k = 0; k < it.size(); ++k) {
      const double t = it.times()[k];
      const Field vr = it.at(k, "rho") - one;
      const Field linear = low_pass(heat_semigroup(vrho0, kappa1 * t), n);
      pert.append(t, {{"rho", vr}, {"u", it.at(k, "u")}, {"bar", vr - linear}});
    }
    rec.R = time_besov_norm(pert, "rho", inf, crit);
    rec.S = time_besov_norm(pert, "rho", 1.0, crit2);
    rec.U = time_besov_norm(pert, "u", inf, crit);
    rec.rho_bar = time_besov_norm(pert, "bar", inf, crit);
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const double prev_B = res.records.empty() ? inf : res.records.back().B;
    res.records.push_back(rec);
    res.iterates.push_back(std::move(it));
    if (rec.B < opts.stop_below) {
      res.converged = true;
      break;
    }
    stagnant = (std::isfinite(prev_B) && rec.B > opts.stagnation_ratio * prev_B) ? stagnant + 1 : 0;
    if (stagnant >= opts.stagnation_count) {
      res.stagnated = true;
      break;
    }
  }
  return res;
}

}  // namespace bzm
