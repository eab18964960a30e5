#include "bzm/spectral/cutoff.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace bzm {

namespace {

double bump(double x) {
  if (x <= -1.0 || x >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - x * x));
}

// 8-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 4> gl_nodes = {0.1834346424956498, 0.5255324099163290,
                                            0.7966664774136267, 0.9602898564975363};
constexpr std::array<double, 4> gl_weights = {0.3626837833783620, 0.3137066458778873,
                                              0.2223810344533745, 0.1012285362903763};

double integrate_bump(double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < gl_nodes.size(); ++i) {
    sum += gl_weights[i] * (bump(mid - half * gl_nodes[i]) + bump(mid + half * gl_nodes[i]));
  }
  return sum * half;
}

}  // namespace

CutoffPair::CutoffPair(int log2_resolution) {
  const std::size_t m = std::size_t{1} << log2_resolution;
  table_.assign(m + 1, 0.0);
  // Cumulative integral of the bump in x = 2s - 1; table holds raw values,
  // normalized below so the last entry is exactly 1.
  for (std::size_t i = 0; i < m; ++i) {
    const double x0 = 2.0 * static_cast<double>(i) / m - 1.0;
    const double x1 = 2.0 * static_cast<double>(i + 1) / m - 1.0;
    table_[i + 1] = table_[i] + integrate_bump(x0, x1);
  }
  norm_ = table_[m];
  for (double& v : table_) v /= norm_;
  table_[m] = 1.0;
}

double CutoffPair::bump_density(double s) const {
  // dH/ds = 2 * bump(2s - 1) / integral of the bump over [-1, 1]
  return 2.0 * bump(2.0 * s - 1.0) / norm_;
}

double CutoffPair::transition(double s) const {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const std::size_t m = table_.size() - 1;
  const double pos = s * static_cast<double>(m);
  std::size_t i = std::min(static_cast<std::size_t>(pos), m - 1);
  const double h = 1.0 / static_cast<double>(m);
  const double t = pos - static_cast<double>(i);
  const double s0 = static_cast<double>(i) * h;
  const double y0 = table_[i], y1 = table_[i + 1];
  const double d0 = bump_density(s0) * h, d1 = bump_density(s0 + h) * h;
  const double t2 = t * t, t3 = t2 * t;
  const double v = (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * d0 +
                   (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * d1;
  return std::clamp(v, 0.0, 1.0);
}

double CutoffPair::chi(double t) const {
  t = std::abs(t);
  if (t <= inner) return 1.0;
  if (t >= outer) return 0.0;
  return 1.0 - transition((t - inner) / (outer - inner));
}

const CutoffPair& standard_cutoff() {
  static const CutoffPair pair;
  return pair;
}

}  // namespace bzm
