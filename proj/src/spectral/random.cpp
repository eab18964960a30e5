#include "bzm/spectral/random.hpp"

#include <cmath>
#include <string>

#include "bzm/error.hpp"
#include "bzm/spectral/operators.hpp"

namespace bzm {

namespace {

// Exactly one of k, -k is canonical (first nonzero entry positive).
bool canonical(const std::array<int, 3>& k, int d) {
  for (int a = 0; a < d; ++a) {
    if (k[a] != 0) return k[a] > 0;
  }
  return false;
}

double rms(const Field& f, int c) {
  auto w = f.grid().hermitian_weight();
  auto x = f.coeffs(c);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::norm(x[i]);
  return std::sqrt(s);
}

void fill_modes(Field& f, const RandomFieldOptions& opts, Rng& rng) {
  const Grid& g = f.grid();
  const int d = g.dim();
  const int kmax = static_cast<int>(std::floor(opts.kmax));
  if (kmax < 0 || 2 * kmax >= g.n()) {
    throw Error(ErrorKind::invalid_argument,
                "kmax " + std::to_string(opts.kmax) + " not resolved on N = " + std::to_string(g.n()));
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  const int side = 2 * kmax + 1;
  int total = 1;
  for (int a = 0; a < d; ++a) total *= side;
  for (int c = 0; c < f.components(); ++c) {
    const double mean0 = normal(rng);
    if (!opts.zero_mean) f.coeffs_mut(c)[0] += mean0;
    for (int flat = 0; flat < total; ++flat) {
      std::array<int, 3> k{};
      int rest = flat;
      double k2 = 0.0;
      for (int a = d - 1; a >= 0; --a) {
        k[a] = rest % side - kmax;
        rest /= side;
        k2 += static_cast<double>(k[a]) * k[a];
      }
      if (!canonical(k, d) || k2 > opts.kmax * opts.kmax) continue;
      const double w = std::pow(1.0 + k2, -0.5 * opts.decay);
      const double a = normal(rng), b = normal(rng);
      f.add_mode(c, std::span<const int>(k.data(), d), w * a, w * b);
    }
  }
}

}  // namespace

Field random_band_limited(const Grid& grid, const RandomFieldOptions& opts, Rng& rng) {
  Field f(grid, opts.components);
  fill_modes(f, opts, rng);
  for (int c = 0; c < f.components(); ++c) {
    const double r = rms(f, c);
    if (r > 0.0) {
      auto x = f.coeffs_mut(c);
      for (auto& v : x) v *= opts.amplitude / r;
    }
  }
  return f;
}

Field random_solenoidal(const Grid& grid, RandomFieldOptions opts, Rng& rng) {
  opts.components = grid.dim();
  Field v(grid, grid.dim());
  fill_modes(v, opts, rng);
  Field u = leray_project(v);
  double s = 0.0;
  for (int c = 0; c < u.components(); ++c) s += std::pow(rms(u, c), 2);
  s = std::sqrt(s);
  if (s > 0.0) u *= opts.amplitude / s;
  return u;
}

}  // namespace bzm
