#include "bzm/solvers/monitor.hpp"

#include <algorithm>
#include <cmath>

#include "bzm/besov/norms.hpp"
#include "bzm/error.hpp"
#include "bzm/model/coefficients.hpp"
#include "bzm/spectral/bernstein.hpp"
#include "bzm/spectral/operators.hpp"

namespace bzm {

void MonitorConfig::validate() const {
  if (!(sigma > 0.0)) throw Error(ErrorKind::invalid_argument, "sigma must be positive");
  if (stride < 1) throw Error(ErrorKind::invalid_argument, "stride must be >= 1");
  lifespan.validate();
}

namespace {

BesovParams resolved(const BesovParams& b, int d) {
  BesovParams out = b;
  if (out.s <= 0.0) out.s = 1.0 + d * BesovParams::inv(out.p);
  return out;
}

// Gradient of each component stacked, so ||grad u|| is the norm of the full Jacobian.
std::vector<Field> jacobian(const Field& u) {
  std::vector<Field> out;
  for (int c = 0; c < u.components(); ++c) out.push_back(gradient(u.component(c)));
  return out;
}

// ||grad f||_{B^{d/p}_{p,1}} + ||grad f||_{B^{s-1}_{p,r}} for a scalar or vector f.
double gradient_norm(const Field& f, const BesovParams& b) {
  const int d = f.grid().dim();
  const BesovParams crit{d * BesovParams::inv(b.p), b.p, 1.0};
  const BesovParams low{b.s - 1.0, b.p, b.r};
  double total = 0.0;
  for (const Field& g : jacobian(f)) total += besov_norm(g, crit) + besov_norm(g, low);
  return total;
}

}  // namespace

ContinuationMonitor::ContinuationMonitor(MonitorConfig cfg, PhysicalParams params)
    : cfg_(std::move(cfg)), params_(std::move(params)) {
  cfg_.validate();
}

const MonitorSample& ContinuationMonitor::observe(double t, const Field& rho, const Field& u, const Field& grad_pi) {
  if (!samples_.empty() && !(t > samples_.back().t)) throw Error(ErrorKind::invalid_argument, "monitor times must increase");
  const Grid& g = rho.grid();
  const int d = g.dim();
  const BesovParams b = resolved(cfg_.besov, d);
  const Coefficients c = coefficients_from_density(rho, params_);

  const double grad_rho = lebesgue_norm(gradient(rho), inf);
  const double u_inf = lebesgue_norm(u, inf);
  const double hess = lebesgue_norm(derivative_tensor_magnitude(rho, 2), inf);
  double grad_u = 0.0;
  {
    Field jac = Field::scalar(g);
    auto z = jac.samples_mut();
    for (const Field& gc : jacobian(u)) {
      for (int k = 0; k < d; ++k) {
        auto x = gc.samples(k);
        for (std::size_t i = 0; i < z.size(); ++i) z[i] += x[i] * x[i];
      }
    }
    for (double& v : z) v = std::sqrt(v);
    grad_u = lebesgue_norm(jac, inf);
  }
  const double pressure = besov_norm(grad_pi, BesovParams{-cfg_.sigma, b.p, inf}) + lebesgue_norm(grad_pi, inf);

  Integrands now;
  now.cont = std::pow(hess + grad_u, 2) + pressure;
  const Field grad_kappa = gradient(c.kappa);
  now.kprime = 1.0 + gradient_norm(u, b) + std::pow(besov_norm(grad_kappa, b), 2);
  now.w = gradient_norm(u + gradient(c.b), b);

  // lambda*: sup |lambda| plus Chemin-Lerner L~inf of grad lambda in both spaces.
  sup_lambda_ = std::max(sup_lambda_, lebesgue_norm(c.lambda, inf));
  const Field grad_lambda = gradient(c.lambda);
  const BesovParams crit{d * BesovParams::inv(b.p), b.p, 1.0};
  const BesovParams low{b.s - 1.0, b.p, b.r};
  if (block_sup_hi_.empty()) {
    block_sup_hi_.assign(d, {});
    block_sup_lo_.assign(d, {});
  }
  double cl_hi = 0.0, cl_lo = 0.0;
  std::vector<double> comp_hi(d), comp_lo(d);
  for (int k = 0; k < d; ++k) {
    const auto hi = weighted_block_norms(grad_lambda, k, crit);
    const auto lo = weighted_block_norms(grad_lambda, k, low);
    auto& sh = block_sup_hi_[k];
    auto& sl = block_sup_lo_[k];
    if (sh.empty()) {
      sh.assign(hi.size(), 0.0);
      sl.assign(lo.size(), 0.0);
    }
    for (std::size_t j = 0; j < hi.size(); ++j) {
      sh[j] = std::max(sh[j], hi[j]);
      sl[j] = std::max(sl[j], lo[j]);
    }
    comp_hi[k] = lr_sum(sh, 1.0);
    comp_lo[k] = lr_sum(sl, low.r);
  }
  cl_hi = lr_sum(comp_hi, 1.0);
  cl_lo = lr_sum(comp_lo, low.r);

  MonitorSample s;
  s.t = t;
  if (samples_.empty()) {
    s.sup_term = grad_rho + u_inf;
  } else {
    const MonitorSample& prev = samples_.back();
    const double dt = t - prev.t;
    s.sup_term = std::max(prev.sup_term, grad_rho + u_inf);
    s.integral = prev.integral + 0.5 * dt * (last_.cont + now.cont);
    s.K = prev.K + 0.5 * dt * (last_.kprime + now.kprime);
    s.W = prev.W + 0.5 * dt * (last_.w + now.w);
  }
  s.continuation = s.sup_term + s.integral;
  s.lambda_star = sup_lambda_ + cl_hi + cl_lo;
  last_ = now;
  samples_.push_back(s);
  if (!triggered_ && (s.continuation > cfg_.continuation_threshold || s.K > cfg_.k_threshold)) {
    triggered_ = true;
    trigger_time_ = t;
  }
  return samples_.back();
}

std::vector<MonitorSample> continuation_monitor(const Trajectory& traj, const MonitorConfig& cfg,
                                                const PhysicalParams& params) {
  if (traj.empty()) throw Error(ErrorKind::insufficient_samples, "empty trajectory");
  ContinuationMonitor m(cfg, params);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    m.observe(traj.times()[i], traj.at(i, "rho"), traj.at(i, "u"), traj.at(i, "grad_pi"));
  }
  return m.samples();
}

}  // namespace bzm
