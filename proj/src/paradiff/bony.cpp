#include "bzm/paradiff/bony.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include "bzm/error.hpp"
#include "bzm/spectral/littlewood_paley.hpp"
#include "bzm/spectral/operators.hpp"

namespace bzm {

namespace {

void check_pair(const Field& u, const Field& v) {
  if (!(u.grid() == v.grid())) throw Error(ErrorKind::grid_mismatch, "fields live on different grids");
  if (u.components() != 1 && v.components() != 1 && u.components() != v.components()) {
    throw Error(ErrorKind::component_mismatch, "one factor must be scalar");
  }
}

using SymbolPair = std::pair<std::vector<double>, std::vector<double>>;

// P( sum_terms (m1 P u)(m2 P v) ) with one forward transform at the end.
Field bilinear_sum(const Field& u, const Field& v, const std::vector<SymbolPair>& terms) {
  check_pair(u, v);
  const Grid& g = u.grid();
  const Field pu = dealias(u), pv = dealias(v);
  const int nc = std::max(u.components(), v.components());
  Field acc(g, nc);
  std::vector<std::span<double>> out;
  for (int c = 0; c < nc; ++c) out.push_back(acc.samples_mut(c));
  for (const auto& [mu, mv] : terms) {
    const Field a = apply_symbol(pu, mu), b = apply_symbol(pv, mv);
    for (int c = 0; c < nc; ++c) {
      auto x = a.samples(u.components() == 1 ? 0 : c);
      auto y = b.samples(v.components() == 1 ? 0 : c);
      for (std::size_t i = 0; i < x.size(); ++i) out[c][i] += x[i] * y[i];
    }
  }
  return dealias(acc);
}

std::vector<double> block(const Grid& g, int j) {
  auto s = g.block_symbol(j);
  return std::vector<double>(s.begin(), s.end());
}

bool nonzero(const std::vector<double>& s) {
  for (double v : s) {
    if (v != 0.0) return true;
  }
  return false;
}

}  // namespace

Field paraproduct(const Field& u, const Field& v) {
  const Grid& g = u.grid();
  std::vector<SymbolPair> terms;
  for (int j = 1; j <= g.max_block(); ++j) terms.emplace_back(low_pass_symbol(g, j - 1), block(g, j));
  return bilinear_sum(u, v, terms);
}

Field remainder(const Field& u, const Field& v) {
  const Grid& g = u.grid();
  const std::size_t ns = g.spectral_size();
  std::vector<SymbolPair> terms;
  for (int j = -1; j <= g.max_block(); ++j) {
    std::vector<double> near(ns, 0.0);
    for (int jj = j - 1; jj <= j + 1; ++jj) {
      auto b = g.block_symbol(jj);
      for (std::size_t s = 0; s < b.size(); ++s) near[s] += b[s];
    }
    terms.emplace_back(block(g, j), std::move(near));
  }
  return bilinear_sum(u, v, terms);
}

Field paraproduct_wide(const Field& u, const Field& v) {
  const Grid& g = u.grid();
  std::vector<SymbolPair> terms;
  for (int k = -1; k <= g.max_block(); ++k) {
    auto low = low_pass_symbol(g, k + 2);
    if (nonzero(low)) terms.emplace_back(std::move(low), block(g, k));
  }
  return bilinear_sum(u, v, terms);
}

Field commutator(const Field& phi, int j, const Field& psi) {
  if (phi.components() != 1 || psi.components() != 1) {
    throw Error(ErrorKind::component_mismatch, "commutator takes scalar phi and psi");
  }
  check_pair(phi, psi);
  const Field grad = gradient(psi);
  return multiply(phi, dyadic_block(grad, j)) - dyadic_block(multiply(phi, grad), j);
}

std::vector<Field> commutator_gradient(const Field& phi, int j, const Field& psi) {
  const Field c = commutator(phi, j, psi);
  std::vector<Field> rows;
  for (int a = 0; a < phi.grid().dim(); ++a) rows.push_back(partial(c, a));
  return rows;
}

std::array<Field, 5> commutator_decomposition(const Field& phi, int j, const Field& psi) {
  if (phi.components() != 1 || psi.components() != 1) {
    throw Error(ErrorKind::component_mismatch, "commutator takes scalar phi and psi");
  }
  check_pair(phi, psi);
  const Field low = dyadic_block(phi, -1);
  const Field tilde = phi - low;
  const Field grad = gradient(psi);
  const Field local = dyadic_block(grad, j);
  return {
      paraproduct(tilde, local) - dyadic_block(paraproduct(tilde, grad), j),
      paraproduct_wide(local, tilde),
      -dyadic_block(paraproduct(grad, tilde), j),
      -dyadic_block(remainder(tilde, grad), j),
      multiply(low, local) - dyadic_block(multiply(low, grad), j),
  };
}

double young_split(double a, double b, double theta, double eps) {
  if (!(a >= 0.0) || !(b >= 0.0) || !(theta > 0.0 && theta < 1.0) || !(eps > 0.0)) {
    throw Error(ErrorKind::domain_violation, "young_split needs a, b >= 0, theta in (0,1), eps > 0");
  }
  return theta * std::pow(eps, -(1.0 - theta) / theta) * std::pow(a, 1.0 / theta) +
         (1.0 - theta) * eps * std::pow(b, 1.0 / (1.0 - theta));
}

}  // namespace bzm
