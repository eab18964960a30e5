#include "bzm/solvers/evolve.hpp"

#include <cmath>
#include <sstream>

#include "bzm/besov/norms.hpp"
#include "bzm/error.hpp"
#include "bzm/model/flow_state.hpp"
#include "bzm/solvers/heat.hpp"
#include "bzm/spectral/operators.hpp"

namespace bzm {

std::string to_string(StopReason r) {
  return r == StopReason::completed ? "completed" : "continuation-triggered";
}

namespace {

struct Stage {
  DensityCoefficients density;
  VelocityCoefficients velocity;
};

Stage stage_coefficients(const Field& rho, const Field& u, const PhysicalParams& params, const EvolveOptions& opts,
                         double t) {
  const Coefficients c = coefficients_from_density(rho, params);
  Stage s;
  s.density = {u, c.kappa, opts.f_rho ? opts.f_rho(t) : Field{}};
  s.velocity = {u + gradient(c.b), c.lambda, source_h_forms(rho, u, c).compact, opts.f_u ? opts.f_u(t) : Field{}};
  return s;
}

}  // namespace

EvolveResult evolve(const Field& rho0, const Field& u0, const PhysicalParams& params, const EvolveOptions& opts) {
  params.validate();
  if (!(opts.T >= 0.0) || !(opts.dt > 0.0) || opts.stride < 1) throw Error(ErrorKind::invalid_argument, "need T >= 0, dt > 0, stride >= 1");
  if (!u0.is_vector() || !(u0.grid() == rho0.grid())) throw Error(ErrorKind::grid_mismatch, "u0 must be a vector field on the rho0 grid");
  const double div0 = lebesgue_norm(divergence(u0), inf);
  if (div0 > 1e-8) throw Error(ErrorKind::non_solenoidal, "||div u0||_inf = " + std::to_string(div0));
  check_density(rho0, params.kappa);

  const int nsteps = opts.T > 0.0 ? static_cast<int>(std::ceil(opts.T / opts.dt - 1e-9)) : 0;
  const double dt = nsteps > 0 ? opts.T / nsteps : opts.dt;
  const double lo = min_sample(rho0) - opts.max_principle_tol;
  const double hi = max_sample(rho0) + opts.max_principle_tol;
  const bool check_bounds = !opts.f_rho;

  EvolveResult res;
  res.dt = dt;
  res.traj = Trajectory(rho0.grid());
  ContinuationMonitor monitor(opts.monitor, params);
  auto& series = res.traj.series();

  Field rho = rho0;
  Field u = leray_project(u0);
  for (int n = 0;; ++n) {
    const double t = n * dt;
    const Stage s0 = stage_coefficients(rho, u, params, opts, t);
    const VelocityRate r0 = velocity_rate(u, s0.velocity, opts.pressure);

    if (n % opts.stride == 0 || n == nsteps) {
      Trajectory::Channels ch{{"rho", rho}, {"u", u}, {"grad_pi", r0.grad_pi}};
      if (opts.f_rho) ch.emplace("f_rho", s0.density.forcing);
      if (opts.f_u) ch.emplace("f_u", s0.velocity.forcing);
      res.traj.append(t, std::move(ch));
      series["mass"].push_back(mean(rho));
      series["div_inf"].push_back(lebesgue_norm(divergence(u), inf));
      series["rho_min"].push_back(min_sample(rho));
      series["rho_max"].push_back(max_sample(rho));
      series["cfl"].push_back(cfl_number(s0.velocity.drift, dt));
      series["pressure_iterations"].push_back(r0.iterations);
      const MonitorSample& m = monitor.observe(t, rho, u, r0.grad_pi);
      series["continuation"].push_back(m.continuation);
      series["K"].push_back(m.K);
      series["W"].push_back(m.W);
      series["lambda_star"].push_back(m.lambda_star);
      if (monitor.triggered() && opts.stop_on_trigger) {
        res.stop = StopReason::continuation_triggered;
        res.stop_time = t;
        break;
      }
    }
    if (n == nsteps) {
      res.stop_time = t;
      break;
    }

    check_cfl(s0.velocity.drift, dt, opts.cfl_limit);
    check_cfl(u, dt, opts.cfl_limit);
    const double kbar = mean(s0.density.kappa);
    const double heat_time = kbar * dt;

    Field rho1 = rho;
    rho1.axpy(dt, density_explicit(rho, s0.density, kbar));
    rho1 = heat_semigroup(rho1, heat_time);
    Field u1 = u;
    u1.axpy(dt, r0.rate);

    const Stage s1 = stage_coefficients(rho1, u1, params, opts, t + dt);
    const VelocityRate r1 = velocity_rate(u1, s1.velocity, opts.pressure);

    Field rho_next = heat_semigroup(rho, heat_time);
    rho_next += rho1;
    rho_next.axpy(dt, density_explicit(rho1, s1.density, kbar));
    rho_next *= 0.5;
    Field u_next = u + u1;
    u_next.axpy(dt, r1.rate);
    u_next *= 0.5;

    rho = std::move(rho_next);
    u = leray_project(u_next);
    res.steps = n + 1;

    if (check_bounds) {
      const double mn = min_sample(rho), mx = max_sample(rho);
      if (mn < lo || mx > hi) {
        std::ostringstream os;
        os << "density range [" << mn << ", " << mx << "] left [" << lo << ", " << hi << "] at t = " << t + dt;
        throw Error(ErrorKind::density_bound_violation, os.str());
      }
    }
  }
  res.monitor = monitor.samples();
  return res;
}

}  // namespace bzm
