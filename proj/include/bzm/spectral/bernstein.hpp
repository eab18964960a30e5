#pragma once

#include <optional>

#include "bzm/spectral/field.hpp"

namespace bzm {

struct BernsteinReport {
  int j = 0;
  int order = 0;
  double p = 2.0;
  double q = 2.0;
  /// ||grad^k Delta_j f||_q / (2^{j(k + d(1/p - 1/q))} ||Delta_j f||_p)
  double ratio = 0.0;
  /// ||grad^k Delta_j f||_p / (2^{jk} ||Delta_j f||_p), the two-sided annulus ratio.
  double annulus_ratio = 0.0;
};

/// Pointwise Euclidean norm of all k-th order partial derivatives.
Field derivative_tensor_magnitude(const Field& f, int order);

/// Measures the Bernstein ratios for Delta_j f. Throws Error(empty_block) when
/// the block vanishes; requires 1 <= p <= q <= inf.
BernsteinReport bernstein_probe(const Field& f, int j, int order, double p, double q);

}  // namespace bzm
