#include "bzm/spectral/bernstein.hpp"

#include <cmath>
#include <vector>

#include "bzm/error.hpp"
#include "bzm/spectral/littlewood_paley.hpp"
#include "bzm/spectral/operators.hpp"

namespace bzm {

Field derivative_tensor_magnitude(const Field& f, int order) {
  if (order < 0) throw Error(ErrorKind::invalid_argument, "derivative order must be >= 0");
  std::vector<Field> level{f};
  for (int k = 0; k < order; ++k) {
    std::vector<Field> next;
    next.reserve(level.size() * f.grid().dim());
    for (const Field& g : level) {
      for (int a = 0; a < f.grid().dim(); ++a) next.push_back(partial(g, a));
    }
    level = std::move(next);
  }
  Field out = Field::scalar(f.grid());
  auto z = out.samples_mut();
  for (const Field& g : level) {
    for (int c = 0; c < g.components(); ++c) {
      auto x = g.samples(c);
      for (std::size_t i = 0; i < z.size(); ++i) z[i] += x[i] * x[i];
    }
  }
  for (auto& v : z) v = std::sqrt(v);
  return out;
}

BernsteinReport bernstein_probe(const Field& f, int j, int order, double p, double q) {
  if (!(p >= 1.0) || !(q >= p)) {
    throw Error(ErrorKind::invalid_argument, "Bernstein probe needs 1 <= p <= q");
  }
  const Field block = dyadic_block(f, j);
  const double base_p = sample_lp_norm(magnitude(block).samples(), p);
  const double scale_ref = sample_lp_norm(magnitude(f).samples(), 2.0);
  if (base_p == 0.0 || base_p <= 1e-14 * scale_ref) {
    throw Error(ErrorKind::empty_block, "block " + std::to_string(j) + " of the input vanishes");
  }
  const int d = f.grid().dim();
  const Field deriv = derivative_tensor_magnitude(block, order);
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;

  BernsteinReport r;
  r.j = j;
  r.order = order;
  r.p = p;
  r.q = q;
  r.ratio = sample_lp_norm(deriv.samples(), q) /
            (std::exp2(j * (order + d * (inv_p - inv_q))) * base_p);
  r.annulus_ratio = sample_lp_norm(deriv.samples(), p) / (std::exp2(j * order) * base_p);
  return r;
}

}  // namespace bzm
