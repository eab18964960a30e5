#include <doctest.h>

#include <cmath>

#include "../support/manufactured.hpp"
#include "../support/references.hpp"
#include "bzm/besov/norms.hpp"
#include "bzm/error.hpp"
#include "bzm/model/flow_state.hpp"
#include "bzm/model/residual.hpp"
#include "bzm/solvers/evolve.hpp"
#include "bzm/solvers/heat.hpp"
#include "bzm/solvers/lifespan.hpp"
#include "bzm/solvers/linear.hpp"
#include "bzm/solvers/monitor.hpp"
#include "bzm/solvers/picard.hpp"
#include "bzm/spectral/cutoff.hpp"
#include "bzm/spectral/littlewood_paley.hpp"
#include "bzm/spectral/operators.hpp"
#include "bzm/spectral/random.hpp"

using namespace bzm;

namespace {

double max_abs_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (int c = 0; c < a.components(); ++c) {
    auto x = a.samples(c);
    auto y = b.samples(c);
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  }
  return m;
}

PhysicalParams params_with(KappaSpec k) { return PhysicalParams::from_gas(1.4, 1.0, 1.0, std::move(k)); }

Field solenoidal(const Grid& g, Rng& rng, double amp, int kmax = 4) {
  RandomFieldOptions o;
  o.kmax = kmax;
  o.amplitude = amp;
  o.zero_mean = true;
  return random_solenoidal(g, o, rng);
}

// Data living in blocks -1 and 0 only, so S_n keeps all of it for n >= 1.
Field small_density(const Grid& g, double amp) {
  return Field::sample(g, 1, [=](auto x, int) {
    return 1.0 + amp * (std::cos(x[0]) + 0.7 * std::sin(x[1]) + 0.5 * std::cos(x[0] + x[1]));
  });
}

Field small_velocity(const Grid& g, double amp) {
  // curl of amp (sin x + cos y + 0.6 sin(x - y))
  return Field::sample(g, g.dim(), [=](auto x, int c) {
    if (c == 0) return amp * (-std::sin(x[1]) - 0.6 * std::cos(x[0] - x[1]));
    if (c == 1) return -amp * (std::cos(x[0]) + 0.6 * std::cos(x[0] - x[1]));
    return 0.0;
  });
}

}  // namespace

TEST_CASE("heat semigroup") {
  const Grid g = Grid::make(2, 32);
  const Field f = Field::sample(g, 1, [](auto x, int) { return std::cos(3 * x[0] + 2 * x[1]); });
  CHECK(max_abs_diff(heat_semigroup(f, 0.0), f) == 0.0);
  CHECK(max_abs_diff(heat_semigroup(f, 0.1), std::exp(-13 * 0.1) * f) <= 1e-14);
  CHECK_THROWS_AS(heat_semigroup(f, -1e-3), Error);

  // Block decay rate c_j = -log(||e^{t Delta} Delta_j f|| / ||Delta_j f||) / (t 4^j).
  Rng rng(1);
  RandomFieldOptions o;
  o.kmax = 15;
  const Field r = random_band_limited(g, o, rng);
  const double t = 0.002;
  double cmin = inf, cmax = 0.0;
  for (int j = 0; j <= 3; ++j) {
    const Field b = dyadic_block(r, j);
    const double c = -std::log(lebesgue_norm(heat_semigroup(b, t), 2.0) / lebesgue_norm(b, 2.0)) / (t * std::pow(4.0, j));
    cmin = std::min(cmin, c);
    cmax = std::max(cmax, c);
  }
  CHECK(cmin > 0.3);
  CHECK(cmax / cmin < 3.0);
}

TEST_CASE("heat smallness time") {
  const Grid g = Grid::make(2, 32);
  const BesovParams bp{0.0, 2.0, 1.0};
  HeatSmallnessOptions ho;
  ho.horizon = 0.5;
  CHECK(heat_smallness_time(Field::scalar(g), 1e-3, bp, ho).T_star == doctest::Approx(0.5));

  // Single mode |k| = 8: splits between blocks 2 and 3 with weights chi(1), 1 - chi(1).
  const Field f = Field::sample(g, 1, [](auto x, int) { return std::cos(8 * x[0]); });
  const double w = standard_cutoff().chi(1.0);
  const double amp = 1.0 / std::sqrt(2.0);
  const auto norms = [&](double T) {
    const double l2 = amp * std::sqrt((1 - std::exp(-128 * T)) / 128) * (w * 4.0 + (1 - w) * 8.0);
    const double l1 = amp * (1 - std::exp(-64 * T)) / 64 * (w * 16.0 + (1 - w) * 64.0);
    return std::max(l2, l1);
  };
  const double tau = std::sqrt(0.5 * norms(10.0));
  double lo = 0.0, hi = 0.5;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (norms(mid) <= tau * tau ? lo : hi) = mid;
  }
  const HeatSmallness hs = heat_smallness_time(f, tau, bp, ho);
  CHECK(hs.T_star == doctest::Approx(lo).epsilon(0.02));
  CHECK(std::max(hs.l1_norm, hs.l2_norm) <= tau * tau);

  Rng rng(4);
  RandomFieldOptions o;
  o.kmax = 12;
  const Field mixed = random_band_limited(g, o, rng);
  double prev = 0.0;
  for (double t : {0.5, 1.0, 2.0, 4.0}) {
    const double T = heat_smallness_time(mixed, t, bp, ho).T_star;
    CHECK(T >= prev);
    prev = T;
  }
  try {
    heat_smallness_time(mixed, 1e-6, bp, ho);
    FAIL("expected unreachable target");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unreachable_target);
  }
}

TEST_CASE("pressure solve") {
  const Grid g = Grid::make(2, 64);
  const Field one = Field::constant(g, 1.0);
  const Field pig = Field::sample(g, 1, [](auto x, int) { return std::sin(x[0]) * std::cos(2 * x[1]) + 0.3 * std::cos(3 * x[0]); });
  Rng rng(8);
  const Field noise = solenoidal(g, rng, 0.5, 6);

  const PressureResult p1 = pressure_solve(one, gradient(pig));
  CHECK(max_abs_diff(p1.grad_pi, gradient(pig)) <= 1e-10);
  CHECK(p1.energy_bound);

  const PressureResult p2 = pressure_solve(one, noise);
  CHECK(lebesgue_norm(p2.grad_pi, inf) <= 1e-12);

  const Field lambda = Field::sample(g, 1, [](auto x, int) { return 1.0 + 0.3 * std::cos(x[0]); });
  const Field F = pointwise_multiply(lambda, gradient(pig)) + noise;
  const PressureResult p3 = pressure_solve(lambda, F);
  CHECK(max_abs_diff(p3.grad_pi, gradient(pig)) <= 1e-8);
  CHECK(p3.residual <= 1e-10);
  CHECK(p3.energy_bound);
  CHECK(p3.iterations > 1);

  CHECK_THROWS_AS(pressure_solve(Field::scalar(g), F), Error);
  PressureOptions strict;
  strict.max_iterations = 1;
  try {
    pressure_solve(lambda, F, strict);
    FAIL("expected nonconvergence");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::pressure_nonconvergence);
  }
}

TEST_CASE("density step") {
  const Grid g = Grid::make(2, 32);
  Rng rng(2);
  RandomFieldOptions o;
  o.kmax = 8;
  const Field r = random_band_limited(g, o, rng) + Field::constant(g, 2.0);
  const Field zero_v = Field::vector(g);
  const Field one = Field::constant(g, 1.0);
  for (DensityScheme s : {DensityScheme::imex, DensityScheme::fully_spectral_picard}) {
    CAPTURE(static_cast<int>(s));
    // Crank-Nicolson is only second-order accurate for the heat flow.
    const double dt = s == DensityScheme::imex ? 0.01 : 1e-3;
    const double tol = s == DensityScheme::imex ? 1e-8 : 1e-3;
    CHECK(max_abs_diff(density_step(r, zero_v, one, Field{}, dt, s), heat_semigroup(r, dt)) <= tol);
    const Field u = solenoidal(g, rng, 0.5);
    const Field kappa = Field::sample(g, 1, [](auto x, int) { return 0.5 + 0.2 * std::sin(x[1]); });
    CHECK(max_abs_diff(density_step(Field::constant(g, 1.3), u, kappa, Field{}, 0.01, s), Field::constant(g, 1.3)) <= 1e-14);
  }
  CHECK_THROWS_AS(density_step(r, zero_v, Field::constant(g, -0.1), Field{}, 0.01), Error);
  {
    const Field fast = Field::sample(g, 2, [](auto, int c) { return c == 0 ? 100.0 : 0.0; });
    try {
      density_step(r, fast, one, Field{}, 0.1);
      FAIL("expected CFL refusal");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::cfl_violation);
    }
  }

  SUBCASE("manufactured, second order over one time unit") {
    const PhysicalParams p = params_with(KappaSpec::fickian(0.3));
    const testing::Manufactured m(g, p);
    const auto coeffs = [&](double t) {
      const Field rho = m.rho(t);
      return DensityCoefficients{m.u(t), coefficients_from_density(rho, p).kappa, m.f_rho(t)};
    };
    for (DensityScheme s : {DensityScheme::imex, DensityScheme::fully_spectral_picard}) {
      double err[2];
      for (int level = 0; level < 2; ++level) {
        const int steps = 20 << level;
        const double dt = 1.0 / steps;
        Field rho = m.rho(0.0);
        DensityCoefficients c0 = coeffs(0.0);
        for (int k = 0; k < steps; ++k) {
          DensityCoefficients c1 = coeffs((k + 1) * dt);
          rho = density_step(rho, c0, c1, dt, s);
          c0 = std::move(c1);
        }
        err[level] = lebesgue_norm(rho - m.rho(1.0), 2.0);
      }
      CHECK(err[0] <= 1e-3);
      CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.15));
    }
  }
}

TEST_CASE("velocity step") {
  const Grid g = Grid::make(2, 32);
  const Field one = Field::constant(g, 1.0);
  Rng rng(9);
  const Field u = solenoidal(g, rng, 0.5);
  {
    const VelocityStep s = velocity_step(u, Field{}, one, Field{}, 0.01);
    CHECK(max_abs_diff(s.u_out, u) <= 1e-15);
    CHECK(lebesgue_norm(s.grad_pi, inf) == 0.0);
  }
  // Taylor-Green plus a shear mode, compared with the vorticity reference.
  const Field tg = Field::sample(g, 2, [](auto x, int c) {
    return c == 0 ? std::sin(x[0]) * std::cos(x[1]) + 0.3 * std::cos(x[1]) : -std::cos(x[0]) * std::sin(x[1]);
  });
  double err[2], energy[2];
  for (int level = 0; level < 2; ++level) {
    const double dt = 0.02 / (1 << level);
    const VelocityStep s = velocity_step(tg, tg, one, Field{}, dt);
    err[level] = lebesgue_norm(s.u_out - testing::euler_reference(tg, dt, dt / 8), 2.0);
    CHECK(lebesgue_norm(divergence(s.u_out), inf) <= 1e-10);
    const VelocityStep e = velocity_step(u, u, one, Field{}, dt);
    energy[level] = std::abs(lebesgue_norm(e.u_out, 2.0) - lebesgue_norm(u, 2.0));
  }
  CHECK(err[0] <= 1e-4);
  // The drift is frozen at u_in, so agreement with Euler is O(dt^2).
  CHECK(err[0] / err[1] > 3.5);
  CHECK(energy[0] / energy[1] > 6.0);

  const Field bad = Field::sample(g, 2, [](auto x, int c) { return c == 0 ? std::sin(x[0]) : 0.0; });
  CHECK_THROWS_AS(velocity_step(bad, Field{}, one, Field{}, 0.01), Error);
}

TEST_CASE("evolve") {
  const Grid g = Grid::make(2, 32);
  const PhysicalParams p = params_with(KappaSpec::fickian(0.3));
  SUBCASE("steady state") {
    EvolveOptions eo;
    eo.T = 0.1;
    eo.dt = 0.01;
    const EvolveResult r = evolve(Field::constant(g, 1.0), Field::vector(g), p, eo);
    CHECK(r.steps == 10);
    CHECK(r.stop == StopReason::completed);
    const Trajectory& t = r.traj;
    CHECK(t.size() == 4);  // 0, 4, 8 and the final step
    for (std::size_t i = 0; i < t.size(); ++i) {
      CHECK(max_abs_diff(t.at(i, "rho"), Field::constant(g, 1.0)) == 0.0);
      CHECK(lebesgue_norm(t.at(i, "u"), inf) == 0.0);
    }
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
      const SystemResidual s = system_residual(t, i, p);
      CHECK(s.density <= 1e-10);
      CHECK(s.momentum <= 1e-10);
    }
    // Only the "+1" of K' contributes.
    for (const MonitorSample& m : r.monitor) {
      CHECK(m.K == doctest::Approx(m.t).epsilon(1e-12));
      CHECK(m.integral == 0.0);
    }
  }
  SUBCASE("constant density reduces to Euler") {
    Rng rng(12);
    const Field u0 = solenoidal(g, rng, 0.3);
    EvolveOptions eo;
    eo.T = 0.2;
    eo.dt = 0.002;
    const EvolveResult r = evolve(Field::constant(g, 1.0), u0, p, eo);
    const Field ref = testing::euler_reference(u0, 0.2, 5e-4);
    CHECK(lebesgue_norm(r.traj.at(r.traj.size() - 1, "u") - ref, 2.0) <= 1e-6);
  }
  SUBCASE("manufactured forcing is second order") {
    const testing::Manufactured m(g, p);
    double err[2];
    for (int level = 0; level < 2; ++level) {
      EvolveOptions eo;
      eo.T = 0.5;
      eo.dt = 0.02 / (1 << level);
      eo.f_rho = [&](double t) { return m.f_rho(t); };
      eo.f_u = [&](double t) { return m.f_u(t); };
      const EvolveResult r = evolve(m.rho(0.0), m.u(0.0), p, eo);
      const std::size_t last = r.traj.size() - 1;
      err[level] = lebesgue_norm(r.traj.at(last, "rho") - m.rho(0.5), 2.0) +
                   lebesgue_norm(r.traj.at(last, "u") - m.u(0.5), 2.0);
    }
    CHECK(err[0] / err[1] == doctest::Approx(4.0).epsilon(0.125));
  }
  SUBCASE("invariants") {
    Rng rng(13);
    const Field u0 = solenoidal(g, rng, 0.2);
    const Field rho0 = small_density(g, 0.1);
    EvolveOptions eo;
    eo.T = 0.2;
    eo.dt = 0.005;
    const EvolveResult r = evolve(rho0, u0, p, eo);
    const auto& s = r.traj.series();
    for (double v : s.at("div_inf")) CHECK(v <= 1e-10);
    for (double v : s.at("mass")) CHECK(std::abs(v - s.at("mass")[0]) <= 1e-8);
    for (double v : s.at("rho_min")) CHECK(v >= min_sample(rho0) - 1e-6);
    for (double v : s.at("rho_max")) CHECK(v <= max_sample(rho0) + 1e-6);
    for (std::size_t i = 1; i < r.monitor.size(); ++i) {
      CHECK(r.monitor[i].integral >= r.monitor[i - 1].integral);
      CHECK(r.monitor[i].K >= r.monitor[i - 1].K);
    }
  }
  SUBCASE("forced growth trips the monitor") {
    EvolveOptions eo;
    eo.T = 2.0;
    eo.dt = 0.01;
    eo.monitor.continuation_threshold = 5.0;
    const Field shape = Field::sample(g, 2, [](auto x, int c) { return c == 0 ? std::cos(x[1]) : 0.0; });
    eo.f_u = [&](double t) { return (0.5 * std::exp(2.0 * t)) * shape; };
    const EvolveResult r = evolve(Field::constant(g, 1.0), Field::vector(g), p, eo);
    CHECK(r.stop == StopReason::continuation_triggered);
    CHECK(r.stop_time < 2.0);
    CHECK(r.monitor.back().continuation > 5.0);
  }
  SUBCASE("errors") {
    EvolveOptions eo;
    eo.T = 0.1;
    eo.dt = 0.05;
    const Field fast = Field::sample(g, 2, [](auto x, int c) { return c == 0 ? 50.0 * std::cos(x[1]) : 0.0; });
    CHECK_THROWS_AS(evolve(Field::constant(g, 1.0), fast, p, eo), Error);
    Field neg = Field::constant(g, 1.0);
    neg.samples_mut()[0] = -1.0;
    CHECK_THROWS_AS(evolve(neg, Field::vector(g), p, eo), Error);
  }
}

TEST_CASE("picard driver") {
  const Grid g = Grid::make(2, 32);
  const PhysicalParams p = params_with(KappaSpec::fickian(0.3));
  PicardOptions po;
  po.T_star = 0.1;
  po.dt = 0.005;
  po.n_max = 4;
  SUBCASE("zero data") {
    const PicardResult r = picard_driver(Field::constant(g, 1.0), Field::vector(g), p, po);
    CHECK(r.converged);
    CHECK(r.records.front().B == 0.0);
  }
  SUBCASE("constant density stays constant") {
    const PicardResult r = picard_driver(Field::constant(g, 1.0), small_velocity(g, 0.2), p, po);
    for (const Trajectory& it : r.iterates) {
      for (std::size_t k = 0; k < it.size(); ++k) CHECK(max_abs_diff(it.at(k, "rho"), Field::constant(g, 1.0)) == 0.0);
    }
  }
  SUBCASE("small data converges to the time stepper") {
    po.n_max = 8;
    const Field rho0 = small_density(g, 0.05), u0 = small_velocity(g, 0.05);
    const PicardResult r = picard_driver(rho0, u0, p, po);
    for (std::size_t i = 1; i < r.records.size(); ++i) {
      if (r.records[i].B < 1e-12) break;
      CHECK(r.records[i].B <= 0.5 * r.records[i - 1].B);
    }
    EvolveOptions eo;
    eo.T = po.T_star;
    eo.dt = po.dt;
    eo.stride = 1;
    const EvolveResult e = evolve(rho0, u0, p, eo);
    const Trajectory& fin = r.iterates.back();
    REQUIRE(fin.size() == e.traj.size());
    double diff = 0.0;
    const BesovParams crit{1.0, 2.0, 1.0};
    for (std::size_t k = 0; k < fin.size(); ++k) {
      diff = std::max(diff, besov_norm(fin.at(k, "rho") - e.traj.at(k, "rho"), crit) +
                                besov_norm(fin.at(k, "u") - e.traj.at(k, "u"), crit));
    }
    CHECK(diff <= 1e-6);
  }
}

TEST_CASE("lifespan study") {
  const Grid g = Grid::make(2, 32);
  const PhysicalParams p = params_with(KappaSpec::constant_kappa(0.3));
  LifespanStudyOptions lo;
  lo.horizon = 0.5;
  lo.dt = 0.01;
  lo.monitor.lifespan.L = 0.5;
  SUBCASE("zero data") {
    const LifespanReport r = lifespan_study(Field::constant(g, 1.0), Field::vector(g), p, lo);
    CHECK(r.bound == doctest::Approx(0.5));
    for (double v : r.R) CHECK(v == 0.0);
    for (double v : r.U) CHECK(v == 0.0);
    CHECK(!std::isfinite(r.T_R));
    CHECK(!std::isfinite(r.T_U));
    CHECK(r.regular_until_bound);
  }
  SUBCASE("larger velocity does not lengthen the stable run") {
    lo.horizon = 1.0;
    double prev = inf;
    for (double amp : {0.1, 0.2, 0.4}) {
      const LifespanReport r = lifespan_study(small_density(g, 0.05), small_velocity(g, amp), p, lo);
      CHECK(r.stable_horizon <= prev);
      prev = r.stable_horizon;
    }
  }
  SUBCASE("parabolic constant") {
    // Broadband data; block jmax - 1 is cut by the grid and excluded from the spread.
    const Grid fine = Grid::make(2, 64);
    Rng rng(21);
    RandomFieldOptions o;
    o.kmax = 31;
    o.amplitude = 0.05;
    const Field rho = random_band_limited(fine, o, rng) + Field::constant(fine, 1.0);
    const auto c = parabolic_probe(rho, p, 2.0);
    double cmin = inf, cmax = 0.0;
    for (int j = 1; j <= fine.max_block() - 2; ++j) {
      CHECK(c[j] > 0.0);
      cmin = std::min(cmin, c[j]);
      cmax = std::max(cmax, c[j]);
    }
    CHECK(c[fine.max_block() - 1] > 0.0);
    CHECK(cmax / cmin < 2.0);
  }
}
