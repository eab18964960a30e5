#include "bzm/spectral/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bzm/error.hpp"

namespace bzm {

namespace {

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw Error(ErrorKind::grid_mismatch, "fields live on different grids");
}

void require_vector(const Field& v, const char* what) {
  if (!v.is_vector()) {
    throw Error(ErrorKind::component_mismatch, std::string(what) + " needs a vector field");
  }
}

void require_scalar(const Field& f, const char* what) {
  if (f.components() != 1) {
    throw Error(ErrorKind::component_mismatch, std::string(what) + " needs a scalar field");
  }
}

}  // namespace

Field partial(const Field& f, int axis) {
  const Grid& g = f.grid();
  auto kd = g.derivative_wavenumber(axis);
  Field out(g, f.components());
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.coeffs(c);
    auto dst = out.coeffs_mut(c);
    for (std::size_t s = 0; s < src.size(); ++s) dst[s] = Complex(0.0, kd[s]) * src[s];
  }
  return out;
}

Field gradient(const Field& f) {
  require_scalar(f, "gradient");
  const Grid& g = f.grid();
  Field out = Field::vector(g);
  auto src = f.coeffs();
  for (int a = 0; a < g.dim(); ++a) {
    auto kd = g.derivative_wavenumber(a);
    auto dst = out.coeffs_mut(a);
    for (std::size_t s = 0; s < src.size(); ++s) dst[s] = Complex(0.0, kd[s]) * src[s];
  }
  return out;
}

Field divergence(const Field& v) {
  require_vector(v, "divergence");
  const Grid& g = v.grid();
  Field out = Field::scalar(g);
  auto dst = out.coeffs_mut();
  for (int a = 0; a < g.dim(); ++a) {
    auto kd = g.derivative_wavenumber(a);
    auto src = v.coeffs(a);
    for (std::size_t s = 0; s < src.size(); ++s) dst[s] += Complex(0.0, kd[s]) * src[s];
  }
  return out;
}

Field laplacian(const Field& f) { return apply_symbol(f, f.grid().laplacian_symbol()); }

Field differentiate(const Field& f, DiffKind kind) {
  switch (kind) {
    case DiffKind::gradient: return gradient(f);
    case DiffKind::divergence: return divergence(f);
    case DiffKind::laplacian: return laplacian(f);
  }
  throw Error(ErrorKind::invalid_argument, "unknown derivative kind");
}

Field leray_project(const Field& v) {
  require_vector(v, "leray_project");
  const Grid& g = v.grid();
  const int d = g.dim();
  const std::size_t ns = g.spectral_size();
  Field out = Field::vector(g);
  std::array<std::span<const Complex>, 3> in;
  std::array<std::span<Complex>, 3> res;
  std::array<std::span<const double>, 3> kd;
  for (int a = 0; a < d; ++a) {
    in[a] = v.coeffs(a);
    kd[a] = g.derivative_wavenumber(a);
  }
  for (int a = 0; a < d; ++a) res[a] = out.coeffs_mut(a);
  for (std::size_t s = 0; s < ns; ++s) {
    double k2 = 0.0;
    Complex kv{};
    for (int a = 0; a < d; ++a) {
      k2 += kd[a][s] * kd[a][s];
      kv += kd[a][s] * in[a][s];
    }
    if (k2 == 0.0) {
      for (int a = 0; a < d; ++a) res[a][s] = in[a][s];
      continue;
    }
    const Complex f = kv / k2;
    for (int a = 0; a < d; ++a) res[a][s] = in[a][s] - kd[a][s] * f;
  }
  return out;
}

Field leray_complement(const Field& v) { return v - leray_project(v); }

Field apply_symbol(const Field& f, std::span<const double> symbol) {
  Field out(f.grid(), f.components());
  if (symbol.empty()) return out;
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.coeffs(c);
    auto dst = out.coeffs_mut(c);
    for (std::size_t s = 0; s < src.size(); ++s) dst[s] = symbol[s] * src[s];
  }
  return out;
}

Field dealias(const Field& f) {
  const auto mask = f.grid().dealias_mask();
  Field out(f.grid(), f.components());
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.coeffs(c);
    auto dst = out.coeffs_mut(c);
    for (std::size_t s = 0; s < src.size(); ++s) dst[s] = mask[s] ? src[s] : Complex{};
  }
  return out;
}

Field pointwise_multiply(const Field& a, const Field& b) {
  require_same_grid(a, b);
  if (a.components() != 1 && b.components() != 1 && a.components() != b.components()) {
    throw Error(ErrorKind::component_mismatch, "product needs a scalar factor or equal shapes");
  }
  const int nc = std::max(a.components(), b.components());
  Field out(a.grid(), nc);
  for (int c = 0; c < nc; ++c) {
    auto x = a.samples(a.components() == 1 ? 0 : c);
    auto y = b.samples(b.components() == 1 ? 0 : c);
    auto z = out.samples_mut(c);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = x[i] * y[i];
  }
  return out;
}

Field multiply(const Field& a, const Field& b) {
  return dealias(pointwise_multiply(dealias(a), dealias(b)));
}

Field dot(const Field& a, const Field& b) {
  require_same_grid(a, b);
  require_vector(a, "dot");
  require_vector(b, "dot");
  const Field pa = dealias(a), pb = dealias(b);
  Field out = Field::scalar(a.grid());
  auto z = out.samples_mut();
  for (int c = 0; c < a.components(); ++c) {
    auto x = pa.samples(c);
    auto y = pb.samples(c);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += x[i] * y[i];
  }
  return dealias(out);
}

Field advect(const Field& a, const Field& b) {
  require_same_grid(a, b);
  require_vector(a, "advect");
  const Grid& g = a.grid();
  const Field pa = dealias(a);
  Field out(g, b.components());
  std::vector<Field> db;
  for (int i = 0; i < g.dim(); ++i) db.push_back(partial(dealias(b), i));
  for (int c = 0; c < b.components(); ++c) {
    auto z = out.samples_mut(c);
    for (int i = 0; i < g.dim(); ++i) {
      auto x = pa.samples(i);
      auto y = db[i].samples(c);
      for (std::size_t n = 0; n < z.size(); ++n) z[n] += x[n] * y[n];
    }
  }
  return dealias(out);
}

Field magnitude(const Field& f) {
  Field out = Field::scalar(f.grid());
  auto z = out.samples_mut();
  for (int c = 0; c < f.components(); ++c) {
    auto x = f.samples(c);
    for (std::size_t i = 0; i < z.size(); ++i) z[i] += x[i] * x[i];
  }
  for (auto& v : z) v = std::sqrt(v);
  return out;
}

double mean(const Field& f, int c) { return f.coeffs(c)[0].real(); }

double min_sample(const Field& f) {
  double m = std::numeric_limits<double>::infinity();
  for (int c = 0; c < f.components(); ++c) {
    for (double v : f.samples(c)) m = std::min(m, v);
  }
  return m;
}

double max_sample(const Field& f) {
  double m = -std::numeric_limits<double>::infinity();
  for (int c = 0; c < f.components(); ++c) {
    for (double v : f.samples(c)) m = std::max(m, v);
  }
  return m;
}

double sample_lp_norm(std::span<const double> x, double p) {
  if (x.empty()) return 0.0;
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(p >= 1.0)) throw Error(ErrorKind::invalid_argument, "L^p needs p >= 1");
  double sum = 0.0;
  if (p == 2.0) {
    for (double v : x) sum += v * v;
    return std::sqrt(sum / static_cast<double>(x.size()));
  }
  if (p == 1.0) {
    for (double v : x) sum += std::abs(v);
    return sum / static_cast<double>(x.size());
  }
  // Scale by the max to avoid overflow for large p.
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  for (double v : x) sum += std::pow(std::abs(v) / m, p);
  return m * std::pow(sum / static_cast<double>(x.size()), 1.0 / p);
}

}  // namespace bzm
