#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bzm/besov/besov_params.hpp"
#include "bzm/cli/config.hpp"
#include "bzm/model/params.hpp"
#include "bzm/paradiff/inequality.hpp"
#include "bzm/solvers/evolve.hpp"
#include "bzm/solvers/lifespan.hpp"
#include "bzm/solvers/picard.hpp"
#include "bzm/spectral/random.hpp"

namespace bzm {

// Builders reading the documented keys (see README) with their defaults.
Grid grid_from(const Config& cfg);
PhysicalParams physical_from(const Config& cfg);
BesovParams besov_from(const Config& cfg, int dim);
MonitorConfig monitor_from(const Config& cfg);
EvolveOptions evolve_from(const Config& cfg);
PicardOptions picard_from(const Config& cfg);
LifespanStudyOptions lifespan_from(const Config& cfg);

/// Generator for ensemble member `index`; the stream depends only on
/// (seed, index), so members can be drawn in any order.
Rng member_rng(std::uint64_t seed, std::uint64_t index);

/// Scalar profile under `prefix`: constant, cos-mode, random, small, file.
/// `offset` is added to every profile except file.
Field scalar_profile(const Config& cfg, const std::string& prefix, const Grid& grid, std::uint64_t seed);
/// Solenoidal profile under `prefix`: zero, taylor-green, shear, random, small, file.
Field velocity_profile(const Config& cfg, const std::string& prefix, const Grid& grid, std::uint64_t seed);

/// 1 + amp (cos x + 0.7 sin y + 0.5 cos(x + y)); only |k| <= sqrt(2) modes.
Field small_density(const Grid& grid, double amp);
/// curl of amp (sin x + cos y + 0.6 sin(x - y)).
Field small_velocity(const Grid& grid, double amp);

/// Relative L2 defect of T_a b + T_b a + R(a, b) against the dealiased product.
double bony_defect(const Field& a, const Field& b);

/// Parameters satisfying every hypothesis of the given inequality.
ProbeParameters default_probe_parameters(InequalityId id);

/// Probe of ensemble member `index`: two random fields with a spectrum fixed
/// in wavenumber (so the same functions on every grid with N > 2 kmax),
/// evolved by the heat flow for the time-dependent inequalities.
InequalityReport probe_member(InequalityId id, const Grid& grid, std::uint64_t seed, std::uint64_t index,
                              const ProbeParameters& params, int kmax = 12);

std::vector<InequalityId> all_inequalities();

}  // namespace bzm
