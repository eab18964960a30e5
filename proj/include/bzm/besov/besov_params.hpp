#pragma once

#include <cmath>
#include <limits>

namespace bzm {

inline constexpr double inf = std::numeric_limits<double>::infinity();

/// Besov triplet (s, p, r). The admissibility flags are derived on demand.
struct BesovParams {
  double s = 0.0;
  double p = 2.0;
  double r = 1.0;

  /// B^s_{p,r} embeds in Lipschitz functions: s > 1 + d/p, or equality with r = 1.
  bool satisfies_lipschitz_condition(int d) const {
    const double crit = 1.0 + d * inv(p);
    return s > crit || (s == crit && r == 1.0);
  }
  /// Range of p where the pressure estimates hold.
  bool satisfies_pressure_condition() const { return p >= 2.0 && p <= 4.0; }

  static double inv(double x) { return std::isinf(x) ? 0.0 : 1.0 / x; }
};

}  // namespace bzm
