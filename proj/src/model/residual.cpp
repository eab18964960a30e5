#include "bzm/model/residual.hpp"

#include "bzm/besov/norms.hpp"
#include "bzm/error.hpp"
#include "bzm/model/coefficients.hpp"
#include "bzm/model/flow_state.hpp"
#include "bzm/spectral/operators.hpp"

namespace bzm {

namespace {

// Plain (a . grad) b on the samples.
Field transport(const Field& a, const Field& b) {
  const Grid& g = a.grid();
  Field out(g, b.components());
  for (int j = 0; j < g.dim(); ++j) out += pointwise_multiply(a.component(j), partial(b, j));
  return out;
}

// Second-order derivative on possibly uneven spacing.
Field centred_derivative(const Field& prev, const Field& mid, const Field& next, double hm, double hp) {
  Field out = (hm * hm) * next;
  out.axpy(-hp * hp, prev);
  out.axpy(hp * hp - hm * hm, mid);
  out *= 1.0 / (hm * hp * (hm + hp));
  return out;
}

double ratio(double num, double den) { return den > 0.0 ? num / den : num; }

}  // namespace

SystemResidual system_residual(const Trajectory& traj, std::size_t index, const PhysicalParams& params) {
  if (traj.size() < 3 || index == 0 || index + 1 >= traj.size()) {
    throw Error(ErrorKind::insufficient_samples, "centred differences need neighbours on both sides");
  }
  const auto& t = traj.times();
  const double hm = t[index] - t[index - 1];
  const double hp = t[index + 1] - t[index];
  const Field& rho = traj.at(index, "rho");
  const Field& u = traj.at(index, "u");
  const Field& grad_pi = traj.at(index, "grad_pi");
  const Grid& g = rho.grid();
  const auto& sample = traj.sample(index);
  const Field f_rho = sample.count("f_rho") ? sample.at("f_rho") : Field::scalar(g);
  const Field f_u = sample.count("f_u") ? sample.at("f_u") : Field::vector(g);

  const Coefficients c = coefficients_from_density(rho, params);
  const Field drho = centred_derivative(traj.at(index - 1, "rho"), rho, traj.at(index + 1, "rho"), hm, hp);
  const Field du = centred_derivative(traj.at(index - 1, "u"), u, traj.at(index + 1, "u"), hm, hp);

  const Field adv_rho = transport(u, rho);
  const Field diff_rho = divergence(pointwise_multiply(c.kappa, gradient(rho)));
  Field r_rho = drho + adv_rho - diff_rho - f_rho;

  const Field v = u + gradient(c.b);
  const Field grad_a = gradient(c.a);
  Field div_flux = Field::vector(g);
  for (int i = 0; i < g.dim(); ++i) {
    Field acc = Field::scalar(g);
    const Field dia = grad_a.component(i);
    for (int j = 0; j < g.dim(); ++j) acc += partial(pointwise_multiply(v.component(j), dia), j);
    div_flux.set_component(i, acc);
  }
  const Field adv_u = transport(v, u);
  const Field lam_gp = pointwise_multiply(c.lambda, grad_pi);
  const Field h = pointwise_multiply(c.lambda, div_flux);
  const Field r_u = du + adv_u + lam_gp - h - f_u;
  const Field r_pre = pointwise_multiply(rho, du + adv_u - f_u) + grad_pi - div_flux;

  SystemResidual out;
  out.density = lebesgue_norm(r_rho, 2.0);
  out.momentum = lebesgue_norm(r_u, 2.0);
  out.momentum_pre = lebesgue_norm(r_pre, 2.0);
  out.form_difference = lebesgue_norm(pointwise_multiply(c.lambda, r_pre) - r_u, 2.0);
  out.divergence = lebesgue_norm(divergence(u), 2.0);
  const auto n2 = [](const Field& f) { return lebesgue_norm(f, 2.0); };
  out.density_relative = ratio(out.density, n2(drho) + n2(adv_rho) + n2(diff_rho) + n2(f_rho));
  out.momentum_relative = ratio(out.momentum, n2(du) + n2(adv_u) + n2(lam_gp) + n2(h) + n2(f_u));
  return out;
}

Trajectory rescale_trajectory(const Trajectory& traj, double eps) {
  if (traj.empty()) throw Error(ErrorKind::insufficient_samples, "empty trajectory");
  const auto factor = [eps](const std::string& name) {
    if (name == "u") return 1.0 / eps;
    if (name == "f_rho") return 1.0 / (eps * eps);
    if (name == "grad_pi" || name == "f_u") return 1.0 / (eps * eps * eps);
    return 1.0;
  };
  Trajectory out;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    Trajectory::Channels ch;
    for (const auto& [name, f] : traj.sample(i)) ch.emplace(name, rescale_field(f, eps, factor(name)));
    if (i == 0) out = Trajectory(ch.begin()->second.grid());
    out.append(traj.times()[i] * eps * eps, std::move(ch));
  }
  return out;
}

}  // namespace bzm
