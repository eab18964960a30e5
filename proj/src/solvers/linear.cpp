#include "bzm/solvers/linear.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "bzm/besov/norms.hpp"
#include "bzm/error.hpp"
#include "bzm/solvers/heat.hpp"
#include "bzm/spectral/operators.hpp"

namespace bzm {

namespace {

// Real inner product of two scalar spectra, full-spectrum weighted.
double inner(const Grid& g, std::span<const Complex> x, std::span<const Complex> y) {
  const auto w = g.hermitian_weight();
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * (x[i].real() * y[i].real() + x[i].imag() * y[i].imag());
  return s;
}

Field spectral_scalar(const Grid& g, const std::vector<Complex>& c) {
  Field f = Field::scalar(g);
  auto z = f.coeffs_mut();
  std::copy(c.begin(), c.end(), z.begin());
  return f;
}

// -div(lambda grad p) in spectral form.
std::vector<Complex> apply_operator(const Field& lambda, const std::vector<Complex>& p) {
  const Field flux = pointwise_multiply(lambda, gradient(spectral_scalar(lambda.grid(), p)));
  const Field div = divergence(flux);
  const auto d = div.coeffs();
  std::vector<Complex> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = -d[i];
  return out;
}

}  // namespace

PressureResult pressure_solve(const Field& lambda, const Field& F, const PressureOptions& opts) {
  if (lambda.components() != 1 || !F.is_vector()) throw Error(ErrorKind::component_mismatch, "pressure_solve needs scalar lambda, vector F");
  if (!(lambda.grid() == F.grid())) throw Error(ErrorKind::grid_mismatch, "lambda and F on different grids");
  const Grid& g = lambda.grid();
  const double lmin = min_sample(lambda);
  if (!(lmin > 0.0) || !std::isfinite(max_sample(lambda))) {
    throw Error(ErrorKind::lambda_degenerate, "lambda must stay positive, min = " + std::to_string(lmin));
  }
  const double lbar = mean(lambda);
  const auto sym = g.div_grad_symbol();

  const Field div_field = divergence(F);
  const auto divF = div_field.coeffs();
  std::vector<Complex> b(divF.size());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] = -divF[i];
  const double bnorm = std::sqrt(inner(g, b, b));

  PressureResult out;
  std::vector<Complex> x(b.size(), Complex{});
  if (bnorm > 0.0) {
    const auto precondition = [&](const std::vector<Complex>& r) {
      std::vector<Complex> z(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) z[i] = sym[i] != 0.0 ? r[i] / (-lbar * sym[i]) : Complex{};
      return z;
    };
    std::vector<Complex> r = b;
    std::vector<Complex> z = precondition(r);
    std::vector<Complex> p = z;
    double rz = inner(g, r, z);
    double rnorm = bnorm;
    int it = 0;
    while (rnorm > opts.tolerance * bnorm && it < opts.max_iterations) {
      const std::vector<Complex> Ap = apply_operator(lambda, p);
      const double alpha = rz / inner(g, p, Ap);
      for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] += alpha * p[i];
        r[i] -= alpha * Ap[i];
      }
      rnorm = std::sqrt(inner(g, r, r));
      ++it;
      z = precondition(r);
      const double rz_new = inner(g, r, z);
      const double beta = rz_new / rz;
      rz = rz_new;
      for (std::size_t i = 0; i < p.size(); ++i) p[i] = z[i] + beta * p[i];
    }
    out.iterations = it;
    // True residual rather than the recursive one.
    const std::vector<Complex> Ax = apply_operator(lambda, x);
    std::vector<Complex> res(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) res[i] = Ax[i] - b[i];
    out.residual = std::sqrt(inner(g, res, res)) / bnorm;
    if (!(out.residual <= opts.accept)) {
      std::ostringstream os;
      os << "relative residual " << out.residual << " after " << it << " iterations";
      throw Error(ErrorKind::pressure_nonconvergence, os.str());
    }
  }
  x[0] = Complex{};
  out.pi = spectral_scalar(g, x);
  out.grad_pi = gradient(out.pi);
  out.energy_bound = lmin * lebesgue_norm(out.grad_pi, 2.0) <= (1.0 + 1e-8) * lebesgue_norm(F, 2.0);
  return out;
}

double cfl_number(const Field& drift, double dt) {
  const Grid& g = drift.grid();
  std::vector<double> speed(g.size(), 0.0);
  for (int c = 0; c < drift.components(); ++c) {
    auto x = drift.samples(c);
    for (std::size_t i = 0; i < speed.size(); ++i) speed[i] += std::abs(x[i]);
  }
  double m = 0.0;
  for (double s : speed) m = std::max(m, s);
  return dt * m / g.spacing();
}

void check_cfl(const Field& drift, double dt, double limit) {
  const double c = cfl_number(drift, dt);
  if (c > limit) {
    std::ostringstream os;
    os << "advective CFL " << c << " exceeds " << limit;
    throw Error(ErrorKind::cfl_violation, os.str());
  }
}

Field density_explicit(const Field& rho, const DensityCoefficients& c, double kappa_bar) {
  const Field grad = gradient(rho);
  Field out = divergence(multiply(c.kappa - Field::constant(rho.grid(), kappa_bar), grad));
  if (!c.drift.empty()) out -= dot(c.drift, grad);
  if (!c.forcing.empty()) out += c.forcing;
  return out;
}

namespace {

void check_kappa(const Field& kappa) {
  const double kmin = min_sample(kappa);
  if (!(kmin > 0.0)) throw Error(ErrorKind::kappa_degenerate, "kappa must stay positive, min = " + std::to_string(kmin));
}

Field solve_shifted(const Field& rhs, double coef) {
  // (I - coef Delta)^{-1}
  const auto lap = rhs.grid().laplacian_symbol();
  std::vector<double> sym(lap.size());
  for (std::size_t i = 0; i < sym.size(); ++i) sym[i] = 1.0 / (1.0 - coef * lap[i]);
  return apply_symbol(rhs, sym);
}

}  // namespace

Field density_step(const Field& rho_in, const DensityCoefficients& start, const DensityCoefficients& end, double dt,
                   DensityScheme scheme) {
  if (!(dt > 0.0)) throw Error(ErrorKind::invalid_argument, "dt must be positive");
  check_kappa(start.kappa);
  check_kappa(end.kappa);
  if (!start.drift.empty()) check_cfl(start.drift, dt);
  if (!end.drift.empty()) check_cfl(end.drift, dt);
  const double kbar = mean(start.kappa);

  if (scheme == DensityScheme::imex) {
    Field stage = rho_in;
    stage.axpy(dt, density_explicit(rho_in, start, kbar));
    stage = heat_semigroup(stage, kbar * dt);
    Field out = heat_semigroup(rho_in, kbar * dt);
    out += stage;
    out.axpy(dt, density_explicit(stage, end, kbar));
    out *= 0.5;
    return out;
  }

  // Crank-Nicolson: (I - dt/2 kbar Delta) x = rho + dt/2 L0 rho + dt/2 (L1 - kbar Delta) x,
  // with L = kbar Delta + explicit part.
  Field known = rho_in;
  known.axpy(0.5 * dt, density_explicit(rho_in, start, kbar));
  known.axpy(0.5 * dt * kbar, laplacian(rho_in));
  Field x = rho_in;
  const double scale = std::max(lebesgue_norm(rho_in, inf), 1e-300);
  for (int it = 0; it < 100; ++it) {
    Field rhs = known;
    rhs.axpy(0.5 * dt, density_explicit(x, end, kbar));
    Field next = solve_shifted(rhs, 0.5 * dt * kbar);
    const double change = lebesgue_norm(next - x, inf);
    x = std::move(next);
    if (change <= 1e-15 * scale) break;
  }
  return x;
}

Field density_step(const Field& rho_in, const Field& u_drift, const Field& kappa, const Field& f, double dt,
                   DensityScheme scheme) {
  const DensityCoefficients c{u_drift, kappa, f};
  return density_step(rho_in, c, c, dt, scheme);
}

VelocityRate velocity_rate(const Field& u, const VelocityCoefficients& c, const PressureOptions& popts) {
  Field G = Field::vector(u.grid());
  if (!c.h.empty()) G += c.h;
  if (!c.forcing.empty()) G += c.forcing;
  if (!c.drift.empty()) G -= advect(c.drift, u);
  PressureResult p = pressure_solve(c.lambda, G, popts);
  VelocityRate out;
  out.rate = G - pointwise_multiply(c.lambda, p.grad_pi);
  out.grad_pi = std::move(p.grad_pi);
  out.iterations = p.iterations;
  return out;
}

VelocityStep velocity_step(const Field& u_in, const VelocityCoefficients& start, const VelocityCoefficients& end,
                           double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::invalid_argument, "dt must be positive");
  const double div = lebesgue_norm(divergence(u_in), inf);
  if (div > 1e-8) throw Error(ErrorKind::non_solenoidal, "||div u_in||_inf = " + std::to_string(div));
  if (!start.drift.empty()) check_cfl(start.drift, dt);
  if (!end.drift.empty()) check_cfl(end.drift, dt);
  const VelocityRate r0 = velocity_rate(u_in, start);
  Field stage = u_in;
  stage.axpy(dt, r0.rate);
  const VelocityRate r1 = velocity_rate(stage, end);
  Field out = u_in + stage;
  out.axpy(dt, r1.rate);
  out *= 0.5;
  VelocityStep step;
  step.u_out = leray_project(out);
  step.grad_pi = 0.5 * (r0.grad_pi + r1.grad_pi);
  return step;
}

VelocityStep velocity_step(const Field& u_in, const Field& drift, const Field& lambda, const Field& h, double dt) {
  const VelocityCoefficients c{drift, lambda, h, {}};
  return velocity_step(u_in, c, c, dt);
}

}  // namespace bzm
