#pragma once

#include <cstdint>
#include <random>

#include "bzm/spectral/field.hpp"

namespace bzm {

using Rng = std::mt19937_64;

struct RandomFieldOptions {
  double kmax = 6.0;       // radial cutoff in integer wavenumbers
  double amplitude = 1.0;  // rms of each component
  double decay = 0.0;      // spectra weighted by (1 + |k|^2)^(-decay/2)
  bool zero_mean = false;
  int components = 1;
};

/// Random real trigonometric polynomial. Modes are drawn in a fixed
/// grid-independent order, so the same seed yields the same function on any
/// grid that resolves kmax.
Field random_band_limited(const Grid& grid, const RandomFieldOptions& opts, Rng& rng);

/// Random divergence-free vector field, normalized so that the rms of |u|
/// equals opts.amplitude; opts.components is ignored.
Field random_solenoidal(const Grid& grid, RandomFieldOptions opts, Rng& rng);

}  // namespace bzm
