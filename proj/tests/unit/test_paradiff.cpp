#include <doctest.h>

#include <cmath>

#include "bzm/besov/norms.hpp"
#include "bzm/error.hpp"
#include "bzm/paradiff/bony.hpp"
#include "bzm/paradiff/inequality.hpp"
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

double max_abs(const Field& a) { return max_abs_diff(a, Field(a.grid(), a.components())); }

Field mode(const Grid& g, int k, int axis = 0, bool sine = false) {
  return Field::sample(g, 1, [=](auto x, int) { return sine ? std::sin(k * x[axis]) : std::cos(k * x[axis]); });
}

Field rnd(const Grid& g, Rng& rng, double kmax = 18.0) {
  RandomFieldOptions o;
  o.kmax = kmax;
  return random_band_limited(g, o, rng);
}

double block_weight(int j, double xi) {
  return j < 0 ? standard_cutoff().chi(xi) : standard_cutoff().phi(std::ldexp(xi, -j));
}

}  // namespace

TEST_CASE("paraproduct examples") {
  const Grid g = Grid::make(2, 64);
  Rng rng(1);
  const Field v = rnd(g, rng);
  const Field c = Field::constant(g, 2.5);
  CHECK(max_abs_diff(paraproduct(c, v), 2.5 * (dealias(v) - low_pass(dealias(v), 1))) <= 1e-12);
  CHECK(max_abs(paraproduct(v, c)) <= 1e-12);
  // low mode times high mode
  const Field lo = mode(g, 1), hi = mode(g, 16, 1);
  CHECK(max_abs_diff(paraproduct(lo, hi), multiply(lo, hi)) <= 1e-12);
}

TEST_CASE("remainder examples") {
  const Grid g = Grid::make(2, 64);
  Rng rng(2);
  const Field v = rnd(g, rng);
  CHECK(max_abs(remainder(Field::scalar(g), v)) == 0.0);
  const Field a = mode(g, 5), b = mode(g, 6);
  CHECK(max_abs_diff(remainder(a, b), multiply(a, b)) <= 1e-12);
  CHECK(max_abs(paraproduct(a, b)) <= 1e-13);
  CHECK(max_abs(paraproduct(b, a)) <= 1e-13);
}

TEST_CASE("bony exactness") {
  for (int n : {64, 128}) {
    const Grid g = Grid::make(2, n);
    Rng rng(3);
    for (int i = 0; i < 4; ++i) {
      const Field u = rnd(g, rng, n / 3.0), v = rnd(g, rng, n / 3.0);
      const Field full = multiply(u, v);
      const Field split = paraproduct(u, v) + paraproduct(v, u) + remainder(u, v);
      CHECK(lebesgue_norm(full - split, 2.0) <= 1e-10 * lebesgue_norm(u, 2.0) * lebesgue_norm(v, 2.0));
      CHECK(max_abs_diff(paraproduct_wide(u, v), paraproduct(u, v) + remainder(u, v)) <= 1e-12);
    }
  }
}

TEST_CASE("paraproduct terms are localized") {
  const Grid g = Grid::make(2, 128);
  Rng rng(4);
  const Field u = rnd(g, rng, 40.0), v = rnd(g, rng, 40.0);
  for (int j = 1; j <= g.max_block(); ++j) {
    const Field term = multiply(low_pass(u, j - 1), dyadic_block(v, j));
    const double size = max_abs(term);
    for (int jj = -1; jj <= g.max_block(); ++jj) {
      if (jj >= j + 3 || jj <= j - 5) CHECK(max_abs(dyadic_block(term, jj)) <= 1e-13 * (1.0 + size));
    }
  }
}

TEST_CASE("commutator") {
  const Grid g = Grid::make(2, 64);
  Rng rng(5);
  const Field phi = rnd(g, rng), psi = rnd(g, rng);
  for (int j = -1; j <= 5; ++j) {
    CHECK(max_abs(commutator(Field::constant(g, 3.0), j, psi)) <= 1e-12);
    CHECK(max_abs(commutator(phi, j, Field::constant(g, 3.0))) == 0.0);
  }
  // two-mode closed form along x1
  const int k1 = 3, k2 = 7;
  for (int j = -1; j <= 4; ++j) {
    const double w2 = block_weight(j, k2), wp = block_weight(j, k1 + k2), wm = block_weight(j, k2 - k1);
    const Field expect0 = -0.5 * k2 * ((w2 - wp) * mode(g, k1 + k2, 0, true) + (w2 - wm) * mode(g, k2 - k1, 0, true));
    Field expect = Field::vector(g);
    expect.set_component(0, expect0);
    CHECK(max_abs_diff(commutator(mode(g, k1), j, mode(g, k2)), expect) <= 1e-12);
  }
  // bilinearity
  const Field phi2 = rnd(g, rng), psi2 = rnd(g, rng);
  const Field lhs = commutator(2.0 * phi - phi2, 3, psi + 0.5 * psi2);
  const Field rhs = 2.0 * commutator(phi, 3, psi) + commutator(phi, 3, psi2) - commutator(phi2, 3, psi) -
                    0.5 * commutator(phi2, 3, psi2);
  CHECK(max_abs_diff(lhs, rhs) <= 1e-12 * (1.0 + max_abs(lhs)));
}

TEST_CASE("appendix decomposition") {
  const Grid g = Grid::make(2, 64);
  Rng rng(6);
  for (int i = 0; i < 3; ++i) {
    const Field phi = rnd(g, rng), psi = rnd(g, rng);
    for (int j = 0; j <= 5; ++j) {
      const auto parts = commutator_decomposition(phi, j, psi);
      Field sum = Field::vector(g);
      for (const Field& p : parts) sum += p;
      const Field c = commutator(phi, j, psi);
      CHECK(max_abs_diff(sum, c) <= 1e-10 * (1.0 + max_abs(c)));
    }
  }
  // pure low frequency phi: only R5 survives
  const Grid wide = Grid::make(2, 32, 4.0 * std::numbers::pi);
  const Field low = Field::sample(wide, 1, [](auto x, int) { return std::cos(0.5 * x[0]) + 0.3 * std::sin(0.5 * x[1]); });
  Rng r2(7);
  const Field psi = rnd(wide, r2, 10.0);
  CHECK(max_abs_diff(dyadic_block(low, -1), low) <= 1e-14);
  const auto parts = commutator_decomposition(low, 2, psi);
  for (int k = 0; k < 4; ++k) CHECK(max_abs(parts[k]) <= 1e-13);
  CHECK(max_abs_diff(parts[4], commutator(low, 2, psi)) <= 1e-13);
  const auto zero = commutator_decomposition(Field::constant(g, 2.0), 3, rnd(g, rng));
  for (const Field& p : zero) CHECK(max_abs(p) <= 1e-12);
}

TEST_CASE("young split") {
  CHECK(young_split(0.0, 0.0, 0.5, 1.0) == 0.0);
  CHECK(young_split(1.0, 1.0, 0.5, 1.0) == doctest::Approx(1.0));
  Rng rng(9);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = 5 * U(rng), b = 5 * U(rng), th = 0.01 + 0.98 * U(rng), eps = std::exp(8 * U(rng) - 4);
    CHECK(young_split(a, b, th, eps) >= a * b * (1.0 - 1e-12));
  }
  CHECK_THROWS_AS(young_split(-1.0, 1.0, 0.5, 1.0), Error);
  CHECK_THROWS_AS(young_split(1.0, 1.0, 1.0, 1.0), Error);
  CHECK_THROWS_AS(young_split(1.0, 1.0, 0.5, 0.0), Error);
}

TEST_CASE("inequality probes") {
  const Grid g = Grid::make(2, 64);
  Rng rng(10);
  const Field a = rnd(g, rng, 12.0), b = rnd(g, rng, 12.0);
  ProbeParameters pp;
  pp.s = 1.5;

  const auto para = inequality_probe(InequalityId::prod_para, Field::constant(g, 1.0), b, pp);
  CHECK(para.ratio <= 1.0 + 1e-12);
  CHECK(inequality_probe(InequalityId::comm_basic, Field::constant(g, 2.0), b, pp).lhs <= 1e-11);

  pp.s1 = 0.5;
  pp.s2 = 0.5;
  pp.p = 2.0;
  CHECK(std::isfinite(inequality_probe(InequalityId::prod_remainder, a, b, pp).ratio));
  pp.s1 = -0.5;
  CHECK_THROWS_AS(inequality_probe(InequalityId::prod_remainder, a, b, pp), Error);
  pp.s = -3.0;
  CHECK_THROWS_AS(inequality_probe(InequalityId::comm_basic, a, b, pp), Error);
  CHECK_THROWS_AS(inequality_probe(InequalityId::comm_tilde_41, a, b, pp), Error);

  // time dependent ids on a short heat flow
  Trajectory traj(g);
  for (int i = 0; i <= 4; ++i) {
    const double t = 0.025 * i;
    auto heat = [&](const Field& f) {
      Field h = f;
      auto c = h.coeffs_mut();
      auto lap = g.laplacian_symbol();
      for (std::size_t s = 0; s < c.size(); ++s) c[s] *= std::exp(lap[s] * t);
      return h;
    };
    traj.append(t, {{"a", heat(a)}, {"b", heat(b)}});
  }
  ProbeParameters q;
  q.s = 1.0;
  q.theta = q.eta = 0.5;
  q.s1 = 1.5;
  q.s2 = complementary_index(2.0, 1.5, 0.5);
  q.sigma1 = 2.5;
  q.sigma2 = complementary_index(2.0, 2.5, 0.5);
  for (double eps : {0.1, 1.0, 10.0}) {
    q.eps = eps;
    const auto r = inequality_probe(InequalityId::comm_tilde_42_deriv, traj, q);
    CHECK(std::isfinite(r.ratio));
    CHECK(r.ratio > 0.0);
  }
  q.s2 = 0.0;
  CHECK_THROWS_AS(inequality_probe(InequalityId::comm_tilde_42_deriv, traj, q), Error);

  ProbeParameters l;
  l.s = 1.0;
  l.theta = l.eta = 0.5;
  l.s1 = 1.5;
  l.s2 = 0.5;
  l.sigma1 = 0.5;
  l.sigma2 = 1.5;
  CHECK(std::isfinite(inequality_probe(InequalityId::prod_lemma_42, traj, l).ratio));
  CHECK(std::isfinite(inequality_probe(InequalityId::prod_timedep, traj, l).ratio));
  CHECK(std::isfinite(inequality_probe(InequalityId::comm_tilde_41, traj, l).ratio));

  CHECK(inequality_from_string("comm_basic") == InequalityId::comm_basic);
  CHECK_THROWS_AS(inequality_from_string("nope"), Error);
}
