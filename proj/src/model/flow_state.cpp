#include "bzm/model/flow_state.hpp"

#include <cmath>

#include "bzm/besov/norms.hpp"
#include "bzm/error.hpp"
#include "bzm/spectral/operators.hpp"

namespace bzm {

struct FlowState::Derived {
  Coefficients coeffs;
  SourceTerm h;
};

FlowState FlowState::make(Field rho, Field u, Field grad_pi, const PhysicalParams& params) {
  if (rho.components() != 1) throw Error(ErrorKind::component_mismatch, "rho must be scalar");
  if (!u.is_vector()) throw Error(ErrorKind::component_mismatch, "u must be a vector field");
  if (!(rho.grid() == u.grid())) throw Error(ErrorKind::grid_mismatch, "rho and u on different grids");
  if (grad_pi.empty()) grad_pi = Field::vector(rho.grid());
  if (!grad_pi.is_vector() || !(grad_pi.grid() == rho.grid())) {
    throw Error(ErrorKind::grid_mismatch, "grad_pi must be a vector field on the state grid");
  }
  FlowState s;
  s.params_ = params;
  auto d = std::make_shared<Derived>();
  d->coeffs = coefficients_from_density(rho, params);
  d->h = source_h_forms(rho, u, d->coeffs);
  s.rho_ = std::move(rho);
  s.u_ = std::move(u);
  s.grad_pi_ = std::move(grad_pi);
  s.derived_ = std::move(d);
  return s;
}

const Coefficients& FlowState::coefficients() const {
  if (!derived_) throw Error(ErrorKind::missing_coefficients, "empty state");
  return derived_->coeffs;
}

const Field& FlowState::h() const {
  if (!derived_) throw Error(ErrorKind::missing_coefficients, "empty state");
  return derived_->h.compact;
}

double FlowState::h_form_difference() const {
  if (!derived_) throw Error(ErrorKind::missing_coefficients, "empty state");
  return derived_->h.relative_difference;
}

double FlowState::rho_min() const { return min_sample(rho_); }
double FlowState::rho_max() const { return max_sample(rho_); }
double FlowState::divergence_norm() const { return lebesgue_norm(divergence(u_), inf); }

SourceTerm source_h_forms(const Field& rho, const Field& u, const Coefficients& coeffs) {
  if (coeffs.a.empty() || coeffs.b.empty() || coeffs.lambda.empty()) {
    throw Error(ErrorKind::missing_coefficients, "coefficients not computed");
  }
  const Grid& g = rho.grid();
  const int d = g.dim();
  const Field grad_a = gradient(coeffs.a);
  const Field v = u + gradient(coeffs.b);

  // Compact: div(v (x) grad a), component i = sum_j d_j (v_j d_i a).
  Field div_flux = Field::vector(g);
  for (int i = 0; i < d; ++i) {
    Field acc = Field::scalar(g);
    const Field dia = grad_a.component(i);
    for (int j = 0; j < d; ++j) acc += partial(multiply(v.component(j), dia), j);
    div_flux.set_component(i, acc);
  }

  // Expanded: Delta b grad a + (u + grad b) . grad^2 a.
  Field expanded = multiply(laplacian(coeffs.b), grad_a) + advect(v, grad_a);

  SourceTerm out;
  out.compact = multiply(coeffs.lambda, div_flux);
  out.expanded = multiply(coeffs.lambda, expanded);
  const double scale = lebesgue_norm(out.compact, 2.0);
  const double diff = lebesgue_norm(out.compact - out.expanded, 2.0);
  out.relative_difference = scale > 0.0 ? diff / scale : diff;
  return out;
}

Field source_h(const FlowState& state) { return state.h(); }

VelocitySplit velocity_split(const Field& v, const Field& rho, const PhysicalParams& params) {
  if (!(v.grid() == rho.grid())) throw Error(ErrorKind::grid_mismatch, "v and rho on different grids");
  VelocitySplit out;
  out.u = leray_project(v);
  out.q_part = v - out.u;
  const Coefficients c = coefficients_from_density(rho, params);
  out.compatibility_residual = lebesgue_norm(gradient(c.b) - out.q_part, 2.0);
  return out;
}

Field velocity_join(const Field& u, const Field& b) {
  if (!u.is_vector() || b.components() != 1) throw Error(ErrorKind::component_mismatch, "velocity_join needs vector u, scalar b");
  const double div = lebesgue_norm(divergence(u), inf);
  if (div > 1e-8) throw Error(ErrorKind::non_solenoidal, "||div u||_inf = " + std::to_string(div));
  return u + gradient(b);
}

double lifespan_lower_bound(double U0, double R0, const LifespanParams& lp) {
  lp.validate();
  if (U0 < 0.0 || R0 < 0.0) throw Error(ErrorKind::invalid_argument, "norms must be nonnegative");
  return lp.L / (1.0 + U0 + std::pow(R0, lp.ell));
}

namespace {

int dyadic_factor(double eps) {
  if (!(eps > 0.0) || eps > 1.0) throw Error(ErrorKind::incompatible_eps, "eps must lie in (0, 1]");
  const double m = std::round(-std::log2(eps));
  if (std::abs(std::ldexp(1.0, -static_cast<int>(m)) - eps) > 1e-14 || m > 8) {
    throw Error(ErrorKind::incompatible_eps, "eps must be 2^-m");
  }
  return 1 << static_cast<int>(m);
}

}  // namespace

Field rescale_field(const Field& f, double eps, double factor) {
  const int q = dyadic_factor(eps);
  const Grid& g = f.grid();
  if (q == 1) return factor * f;
  const Grid fine = Grid::make(g.dim(), g.n() * q, g.period());
  const int n = g.n();
  Field out(fine, f.components());
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.samples(c);
    auto dst = out.samples_mut(c);
    for (std::size_t i = 0; i < dst.size(); ++i) {
      const auto idx = fine.sample_index(i);
      std::size_t old = 0;
      for (int a = 0; a < g.dim(); ++a) old = old * n + static_cast<std::size_t>(idx[a] % n);
      dst[i] = factor * src[old];
    }
  }
  return out;
}

FlowState rescale_state(const FlowState& state, double eps) {
  dyadic_factor(eps);
  return FlowState::make(rescale_field(state.rho(), eps, 1.0), rescale_field(state.u(), eps, 1.0 / eps),
                         rescale_field(state.grad_pi(), eps, 1.0 / (eps * eps * eps)), state.params());
}

}  // namespace bzm
