#include "bzm/model/coefficients.hpp"

#include <cmath>
#include <sstream>

#include "bzm/besov/norms.hpp"
#include "bzm/error.hpp"
#include "bzm/parallel.hpp"
#include "bzm/spectral/operators.hpp"

namespace bzm {

void check_density(const Field& rho, const KappaSpec& kappa) {
  if (rho.components() != 1) throw Error(ErrorKind::component_mismatch, "density must be scalar");
  for (double r : rho.samples()) {
    if (!std::isfinite(r) || !kappa.admits(r)) {
      std::ostringstream os;
      os << "density sample " << r << " outside (" << kappa.rho_lo << ", " << kappa.rho_hi << ")";
      throw Error(ErrorKind::density_out_of_range, os.str());
    }
  }
}

Coefficients coefficients_from_density(const Field& rho, const PhysicalParams& params) {
  check_density(rho, params.kappa);
  const KappaSpec& k = params.kappa;
  Coefficients c;
  c.kappa = map_samples(rho, [&k](double r) { return k(r); });
  c.lambda = map_samples(rho, [](double r) { return 1.0 / r; });
  c.a = Field::scalar(rho.grid());
  c.b = Field::scalar(rho.grid());
  {
    auto src = rho.samples();
    auto a = c.a.samples_mut();
    auto b = c.b.samples_mut();
    if (k.form == KappaForm::custom) {
      parallel_for(src.size(), [&](std::size_t i) {
        a[i] = k.primitive_a(src[i]);
        b[i] = k.primitive_b(src[i]);
      });
    } else {
      for (std::size_t i = 0; i < src.size(); ++i) {
        a[i] = k.primitive_a(src[i]);
        b[i] = k.primitive_b(src[i]);
      }
    }
  }
  const Field ga = gradient(c.a);
  const Field grho = gradient(rho);
  c.grad_a_residual = lebesgue_norm(ga - pointwise_multiply(c.kappa, grho), 2.0);
  c.grad_ab_residual = lebesgue_norm(ga + pointwise_multiply(rho, gradient(c.b)), 2.0);
  return c;
}

}  // namespace bzm
