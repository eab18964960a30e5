#include "bzm/solvers/heat.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "bzm/besov/norms.hpp"
#include "bzm/error.hpp"
#include "bzm/parallel.hpp"
#include "bzm/spectral/littlewood_paley.hpp"
#include "bzm/spectral/operators.hpp"

namespace bzm {

Field heat_semigroup(const Field& f, double t) {
  if (t < 0.0 || !std::isfinite(t)) throw Error(ErrorKind::negative_time, "heat flow needs t >= 0");
  if (t == 0.0) return f;
  const auto lap = f.grid().laplacian_symbol();
  std::vector<double> symbol(lap.size());
  for (std::size_t i = 0; i < lap.size(); ++i) symbol[i] = std::exp(t * lap[i]);
  Field out = f;
  for (int c = 0; c < f.components(); ++c) {
    auto z = out.coeffs_mut(c);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] *= symbol[i];
  }
  return out;
}

HeatSmallness heat_smallness_time(const Field& rho0, double tau, const BesovParams& params,
                                  const HeatSmallnessOptions& opts) {
  if (!(tau > 0.0)) throw Error(ErrorKind::invalid_argument, "tau must be positive");
  if (!(opts.horizon > 0.0) || opts.nodes < 2) throw Error(ErrorKind::invalid_argument, "bad time grid");
  const int K = opts.nodes;
  std::vector<double> t(K + 1);
  for (int i = 0; i <= K; ++i) t[i] = opts.horizon * std::pow(static_cast<double>(i) / K, 2);

  // g[i][c][j] = ||Delta_j e^{t_i Delta} rho0_c||_p, blocks j = -1..jmax.
  const std::vector<Field> blocks = block_decomposition(rho0);
  const int nb = static_cast<int>(blocks.size());
  const int nc = rho0.components();
  std::vector<double> g(static_cast<std::size_t>((K + 1) * nc * nb));
  parallel_for(static_cast<std::size_t>((K + 1) * nb), [&](std::size_t idx) {
    const int i = static_cast<int>(idx) / nb, j = static_cast<int>(idx) % nb;
    const Field b = heat_semigroup(blocks[j], t[i]);
    for (int c = 0; c < nc; ++c) g[(static_cast<std::size_t>(i) * nc + c) * nb + j] = sample_lp_norm(b.samples(c), params.p);
  });

  const auto weight = [](int j, double s) { return std::pow(2.0, j * s); };
  std::vector<double> cum2(static_cast<std::size_t>(nc * nb), 0.0), cum1(cum2.size(), 0.0);
  HeatSmallness best;
  const double target = tau * tau;
  std::vector<double> blocks2(nb), blocks1(nb), comps2(nc), comps1(nc);
  for (int i = 1; i <= K; ++i) {
    const double dt = t[i] - t[i - 1];
    for (int c = 0; c < nc; ++c) {
      for (int j = 0; j < nb; ++j) {
        const std::size_t k = static_cast<std::size_t>(c) * nb + j;
        const double a = g[(static_cast<std::size_t>(i - 1) * nc + c) * nb + j];
        const double b = g[(static_cast<std::size_t>(i) * nc + c) * nb + j];
        cum2[k] += 0.5 * dt * (a * a + b * b);
        cum1[k] += 0.5 * dt * (a + b);
        blocks2[j] = weight(j - 1, params.s + 1.0) * std::sqrt(cum2[k]);
        blocks1[j] = weight(j - 1, params.s + 2.0) * cum1[k];
      }
      comps2[c] = lr_sum(blocks2, params.r);
      comps1[c] = lr_sum(blocks1, params.r);
    }
    const double n2 = nc == 1 ? comps2[0] : lr_sum(comps2, params.r);
    const double n1 = nc == 1 ? comps1[0] : lr_sum(comps1, params.r);
    if (n2 > target || n1 > target) {
      if (i == 1) {
        std::ostringstream os;
        os << "tau^2 = " << target << " but already at t = " << t[1] << " the norms are " << n2 << ", " << n1;
        throw Error(ErrorKind::unreachable_target, os.str());
      }
      break;
    }
    best = {t[i], n2, n1};
  }
  return best;
}

}  // namespace bzm
