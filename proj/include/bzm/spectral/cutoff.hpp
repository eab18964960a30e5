#pragma once

#include <vector>

namespace bzm {

/// Radial cutoff pair (chi, phi) behind the dyadic decomposition.
///
/// chi equals 1 on [0, 3/4], 0 on [4/3, inf) and decreases in between along
/// the normalized primitive of the bump exp(-1 / (1 - x^2)). The primitive is
/// tabulated once and evaluated by cubic Hermite interpolation using the
/// exact bump as derivative data. phi(t) = chi(t/2) - chi(t).
class CutoffPair {
 public:
  static constexpr double inner = 0.75;
  static constexpr double outer = 4.0 / 3.0;

  explicit CutoffPair(int log2_resolution = 14);

  double chi(double t) const;
  double phi(double t) const { return chi(0.5 * t) - chi(t); }

  int resolution() const { return static_cast<int>(table_.size()) - 1; }

 private:
  // Normalized primitive H(s), s in [0, 1], H(0) = 0, H(1) = 1.
  double transition(double s) const;
  double bump_density(double s) const;

  std::vector<double> table_;
  double norm_ = 1.0;
};

/// Process-wide cutoff used by every grid.
const CutoffPair& standard_cutoff();

}  // namespace bzm
