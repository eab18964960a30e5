#include "bzm/spectral/littlewood_paley.hpp"

#include "bzm/error.hpp"
#include "bzm/spectral/operators.hpp"

namespace bzm {

Field dyadic_block(const Field& f, int j) {
  if (j < -1) throw Error(ErrorKind::invalid_argument, "block index must be >= -1");
  return apply_symbol(f, f.grid().block_symbol(j));
}

std::vector<double> low_pass_symbol(const Grid& grid, int j) {
  std::vector<double> sym(grid.spectral_size(), 0.0);
  const int top = std::min(j - 1, grid.max_block());
  for (int jj = -1; jj <= top; ++jj) {
    auto b = grid.block_symbol(jj);
    for (std::size_t s = 0; s < sym.size(); ++s) sym[s] += b[s];
  }
  return sym;
}

Field low_pass(const Field& f, int j) {
  if (j <= -1) return Field(f.grid(), f.components());
  return apply_symbol(f, low_pass_symbol(f.grid(), j));
}

std::vector<Field> block_decomposition(const Field& f) {
  std::vector<Field> out;
  for (int j = -1; j <= f.grid().max_block(); ++j) out.push_back(dyadic_block(f, j));
  return out;
}

}  // namespace bzm
