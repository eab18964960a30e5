#include "bzm/cli/experiments.hpp"

#include <cmath>
#include <random>

#include "bzm/besov/norms.hpp"
#include "bzm/cli/field_io.hpp"
#include "bzm/error.hpp"
#include "bzm/paradiff/bony.hpp"
#include "bzm/solvers/heat.hpp"
#include "bzm/spectral/operators.hpp"

namespace bzm {

Grid grid_from(const Config& cfg) {
  return Grid::make(static_cast<int>(cfg.integer("grid.d", 2)), static_cast<int>(cfg.integer("grid.n", 64)),
                    cfg.number("grid.period", Grid::default_period));
}

PhysicalParams physical_from(const Config& cfg) {
  const std::string form = cfg.text("kappa.form", "fickian");
  const double k0 = cfg.number("kappa.kappa0", 0.1);
  KappaSpec k;
  if (form == "constant") {
    k = KappaSpec::constant_kappa(k0);
  } else if (form == "fickian") {
    k = KappaSpec::fickian(k0);
  } else if (form == "power") {
    k = KappaSpec::power(k0, cfg.number("kappa.m", 1.0));
  } else {
    throw Error(ErrorKind::config_parse_error, "kappa.form must be constant, fickian or power, got '" + form + "'");
  }
  k.rho_lo = cfg.number("kappa.rho_min", 0.0);
  k.rho_hi = cfg.number("kappa.rho_max", inf);
  return PhysicalParams::from_gas(cfg.number("gas.gamma", 1.4), cfg.number("gas.P0", 1.0), cfg.number("gas.R", 1.0),
                                  std::move(k));
}

BesovParams besov_from(const Config& cfg, int dim) {
  const double p = cfg.number("besov.p", 2.0);
  return {cfg.number("besov.s", dim / p), p, cfg.number("besov.r", 1.0)};
}

MonitorConfig monitor_from(const Config& cfg) {
  MonitorConfig m;
  m.sigma = cfg.number("monitor.sigma", 0.5);
  m.besov.s = cfg.number("monitor.s", 0.0);
  m.besov.p = cfg.number("monitor.p", 2.0);
  m.besov.r = cfg.number("monitor.r", 1.0);
  m.continuation_threshold = cfg.number("monitor.threshold", inf);
  m.k_threshold = cfg.number("monitor.k_threshold", inf);
  m.stride = static_cast<int>(cfg.integer("solver.stride", 4));
  m.lifespan.L = cfg.number("lifespan.L", 0.5);
  m.lifespan.ell = cfg.number("lifespan.ell", 7.0);
  m.lifespan.delta = cfg.number("lifespan.delta", 2.0);
  m.validate();
  return m;
}

EvolveOptions evolve_from(const Config& cfg) {
  EvolveOptions o;
  o.T = cfg.number("solver.T", 0.5);
  o.dt = cfg.number("solver.dt", 2e-3);
  o.stride = static_cast<int>(cfg.integer("solver.stride", 4));
  o.cfl_limit = cfg.number("solver.cfl", 0.9);
  o.max_principle_tol = cfg.number("solver.max_principle_tol", 1e-6);
  o.pressure.tolerance = cfg.number("solver.pressure_tol", 1e-12);
  o.pressure.max_iterations = static_cast<int>(cfg.integer("solver.pressure_max_iter", 200));
  o.monitor = monitor_from(cfg);
  o.stop_on_trigger = cfg.flag("monitor.stop", true);
  return o;
}

PicardOptions picard_from(const Config& cfg) {
  PicardOptions o;
  o.T_star = cfg.number("picard.T_star", 0.1);
  o.n_max = static_cast<int>(cfg.integer("picard.n_max", 10));
  o.dt = cfg.number("picard.dt", 2.5e-3);
  o.p = cfg.number("picard.p", 2.0);
  o.stop_below = cfg.number("picard.stop_below", 1e-10);
  o.stagnation_ratio = cfg.number("picard.stagnation_ratio", 0.95);
  o.stagnation_count = static_cast<int>(cfg.integer("picard.stagnation_count", 3));
  const std::string scheme = cfg.text("picard.scheme", "imex");
  if (scheme == "imex") {
    o.scheme = DensityScheme::imex;
  } else if (scheme == "fully_spectral_picard") {
    o.scheme = DensityScheme::fully_spectral_picard;
  } else {
    throw Error(ErrorKind::config_parse_error, "picard.scheme must be imex or fully_spectral_picard");
  }
  return o;
}

LifespanStudyOptions lifespan_from(const Config& cfg) {
  LifespanStudyOptions o;
  o.horizon = cfg.number("lifespan.horizon", 0.5);
  o.dt = cfg.number("solver.dt", 2e-3);
  o.stride = static_cast<int>(cfg.integer("solver.stride", 4));
  o.C_E = cfg.number("lifespan.C_E", 1.0);
  o.parabolic_p = cfg.number("lifespan.parabolic_p", 2.0);
  o.monitor = monitor_from(cfg);
  return o;
}

Rng member_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

Field small_density(const Grid& g, double amp) {
  return Field::sample(g, 1, [=](auto x, int) {
    return 1.0 + amp * (std::cos(x[0]) + 0.7 * std::sin(x[1]) + 0.5 * std::cos(x[0] + x[1]));
  });
}

Field small_velocity(const Grid& g, double amp) {
  return Field::sample(g, g.dim(), [=](auto x, int c) {
    if (c == 0) return amp * (-std::sin(x[1]) - 0.6 * std::cos(x[0] - x[1]));
    if (c == 1) return -amp * (std::cos(x[0]) + 0.6 * std::cos(x[0] - x[1]));
    return 0.0;
  });
}

Field scalar_profile(const Config& cfg, const std::string& prefix, const Grid& g, std::uint64_t seed) {
  const std::string kind = cfg.text(prefix + ".profile", "constant");
  if (kind == "file") return read_field(cfg.text(prefix + ".file", ""), g);
  const double offset = cfg.number(prefix + ".offset", prefix == "rho" ? 1.0 : 0.0);
  Field f = Field::constant(g, offset);
  if (kind == "constant") return f;
  const double amp = cfg.number(prefix + ".amplitude", 0.1);
  if (kind == "cos-mode") {
    std::vector<int> k = cfg.integers(prefix + ".k", {1});
    k.resize(g.dim(), 0);
    f += Field::sample(g, 1, [&](auto x, int) {
      double phase = 0.0;
      for (int a = 0; a < g.dim(); ++a) phase += k[a] * x[a] * g.scale();
      return amp * std::cos(phase);
    });
    return f;
  }
  if (kind == "random") {
    RandomFieldOptions o;
    o.kmax = static_cast<int>(cfg.integer(prefix + ".kmax", 6));
    o.decay = cfg.number(prefix + ".decay", 0.0);
    o.amplitude = amp;
    o.zero_mean = true;
    Rng rng = member_rng(seed, prefix == "rho" ? 1 : 3);
    return f + random_band_limited(g, o, rng);
  }
  if (kind == "small") return small_density(g, amp) + Field::constant(g, offset - 1.0);
  throw Error(ErrorKind::config_parse_error, prefix + ".profile: unknown profile '" + kind + "'");
}

Field velocity_profile(const Config& cfg, const std::string& prefix, const Grid& g, std::uint64_t seed) {
  const std::string kind = cfg.text(prefix + ".profile", "zero");
  if (kind == "zero") return Field::vector(g);
  if (kind == "file") return read_field(cfg.text(prefix + ".file", ""), g);
  const double amp = cfg.number(prefix + ".amplitude", 0.1);
  if (kind == "taylor-green") {
    return Field::sample(g, g.dim(), [&](auto x, int c) {
      const double s = g.scale();
      if (c == 0) return amp * std::sin(s * x[0]) * std::cos(s * x[1]);
      if (c == 1) return -amp * std::cos(s * x[0]) * std::sin(s * x[1]);
      return 0.0;
    });
  }
  if (kind == "shear") {
    return Field::sample(g, g.dim(), [&](auto x, int c) { return c == 0 ? amp * std::sin(g.scale() * x[1]) : 0.0; });
  }
  if (kind == "random") {
    RandomFieldOptions o;
    o.kmax = static_cast<int>(cfg.integer(prefix + ".kmax", 4));
    o.decay = cfg.number(prefix + ".decay", 0.0);
    o.amplitude = amp;
    o.zero_mean = true;
    Rng rng = member_rng(seed, 2);
    return random_solenoidal(g, o, rng);
  }
  if (kind == "small") return small_velocity(g, amp);
  throw Error(ErrorKind::config_parse_error, prefix + ".profile: unknown profile '" + kind + "'");
}

double bony_defect(const Field& a, const Field& b) {
  const Field exact = multiply(a, b);
  const Field split = paraproduct(a, b) + paraproduct(b, a) + remainder(a, b);
  const double scale = lebesgue_norm(exact, 2.0);
  const double diff = lebesgue_norm(split - exact, 2.0);
  return scale > 0.0 ? diff / scale : diff;
}

ProbeParameters default_probe_parameters(InequalityId id) {
  ProbeParameters p;
  switch (id) {
    case InequalityId::prod_para:
    case InequalityId::comm_basic:
      p.s = 1.5;
      break;
    case InequalityId::prod_remainder:
      p.s1 = 0.5;
      p.s2 = 0.5;
      break;
    case InequalityId::comm_tilde_42_deriv:
      p.s = 1.0;
      p.s1 = 1.5;
      p.s2 = complementary_index(2.0, 1.5, 0.5);
      p.sigma1 = 2.5;
      p.sigma2 = complementary_index(2.0, 2.5, 0.5);
      break;
    case InequalityId::prod_timedep:
    case InequalityId::comm_tilde_41:
    case InequalityId::prod_lemma_42:
      p.s = 1.0;
      p.s1 = 1.5;
      p.s2 = 0.5;
      p.sigma1 = 0.5;
      p.sigma2 = 1.5;
      break;
  }
  return p;
}

std::vector<InequalityId> all_inequalities() {
  return {InequalityId::prod_para,     InequalityId::prod_remainder,      InequalityId::prod_timedep,
          InequalityId::comm_basic,    InequalityId::comm_tilde_41,       InequalityId::comm_tilde_42_deriv,
          InequalityId::prod_lemma_42};
}

InequalityReport probe_member(InequalityId id, const Grid& grid, std::uint64_t seed, std::uint64_t index,
                              const ProbeParameters& params, int kmax) {
  Rng rng = member_rng(seed, index);
  RandomFieldOptions o;
  o.kmax = kmax;
  const Field a = random_band_limited(grid, o, rng);
  const Field b = random_band_limited(grid, o, rng);
  const bool timed = id == InequalityId::prod_timedep || id == InequalityId::comm_tilde_41 ||
                     id == InequalityId::comm_tilde_42_deriv || id == InequalityId::prod_lemma_42;
  if (!timed) return inequality_probe(id, a, b, params);
  Trajectory traj(grid);
  for (int i = 0; i <= 4; ++i) {
    const double t = 0.025 * i;
    traj.append(t, {{"a", heat_semigroup(a, t)}, {"b", heat_semigroup(b, t)}});
  }
  return inequality_probe(id, traj, params);
}

}  // namespace bzm
