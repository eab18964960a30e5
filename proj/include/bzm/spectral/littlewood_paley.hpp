#pragma once

#include <vector>

#include "bzm/spectral/field.hpp"

namespace bzm {

/// Delta_j f: j = -1 is chi(D), j >= 0 is phi(2^-j D). Zero above max_block.
Field dyadic_block(const Field& f, int j);
/// S_j f = sum of Delta_j' over j' <= j - 1; S_0 = Delta_{-1}, S_j = 0 for j < 0.
Field low_pass(const Field& f, int j);
/// Multiplier of S_j on the grid's spectral slots.
std::vector<double> low_pass_symbol(const Grid& grid, int j);
/// All blocks j = -1 .. max_block, in that order.
std::vector<Field> block_decomposition(const Field& f);

}  // namespace bzm
