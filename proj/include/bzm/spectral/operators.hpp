#pragma once

#include <span>

#include "bzm/spectral/field.hpp"

namespace bzm {

enum class DiffKind { gradient, divergence, laplacian };

/// Spectral derivatives. First-order symbols drop Nyquist axes so that real
/// fields stay real; the Laplacian uses the full symbol.
Field differentiate(const Field& f, DiffKind kind);
Field gradient(const Field& f);
Field divergence(const Field& v);
Field laplacian(const Field& f);
/// d/dx_axis applied to every component.
Field partial(const Field& f, int axis);

/// Leray projector onto divergence-free fields; the mean mode passes through.
Field leray_project(const Field& v);
/// Complementary gradient part v - leray_project(v).
Field leray_complement(const Field& v);

/// Fourier multiplier m(slot) applied to every component.
Field apply_symbol(const Field& f, std::span<const double> symbol);
/// 2/3-rule truncation: zero every coefficient with some |k_i| > N/3.
Field dealias(const Field& f);

/// Dealiased pointwise product. One of a, b may be a vector; both scalars
/// or scalar times vector.
Field multiply(const Field& a, const Field& b);
/// Plain pointwise product on the samples (no truncation).
Field pointwise_multiply(const Field& a, const Field& b);
/// Dealiased dot product of two vector fields.
Field dot(const Field& a, const Field& b);
/// Dealiased (a . grad) b for vector a and any b.
Field advect(const Field& a, const Field& b);
/// Pointwise map of the samples.
template <class Fn>
Field map_samples(const Field& f, Fn&& fn) {
  Field out(f.grid(), f.components());
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.samples(c);
    auto dst = out.samples_mut(c);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = fn(src[i]);
  }
  return out;
}

/// Pointwise Euclidean magnitude of all components.
Field magnitude(const Field& f);
/// Mean of a scalar (component c) over the box.
double mean(const Field& f, int c = 0);
double min_sample(const Field& f);
double max_sample(const Field& f);

/// Unit-volume L^p norm of raw samples; p = inf gives the max of |x|.
double sample_lp_norm(std::span<const double> x, double p);

}  // namespace bzm
