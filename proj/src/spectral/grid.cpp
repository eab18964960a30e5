#include "bzm/spectral/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "bzm/error.hpp"
#include "bzm/spectral/cutoff.hpp"

namespace bzm {

namespace {

// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

struct Grid::Impl {
  int dim = 0;
  int n = 0;
  double period = 0.0;
  double scale = 0.0;
  std::size_t npts = 0;
  std::size_t nspec = 0;
  int jmax = 0;

  std::array<std::vector<int>, 3> k;
  std::array<std::vector<double>, 3> kderiv;
  std::vector<double> magnitude;
  std::vector<double> weight;
  std::vector<unsigned char> nyquist;
  std::vector<unsigned char> dealias;
  std::vector<double> div_grad;
  std::vector<double> laplacian;
  std::vector<std::vector<double>> blocks;  // index j + 1

  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

Grid Grid::make(int dim, int n, double period) {
  if (dim != 2 && dim != 3) {
    throw Error(ErrorKind::invalid_dimension, "d must be 2 or 3, got " + std::to_string(dim));
  }
  if (!is_power_of_two(n) || n < 8) {
    throw Error(ErrorKind::invalid_resolution,
                "N must be a power of two >= 8, got " + std::to_string(n));
  }
  if (!(period > 0.0) || !std::isfinite(period)) {
    throw Error(ErrorKind::invalid_argument, "period must be positive");
  }

  static std::mutex registry_mutex;
  static std::map<std::tuple<int, int, double>, std::weak_ptr<const Impl>> registry;
  std::lock_guard lock(registry_mutex);
  const auto key = std::make_tuple(dim, n, period);
  if (auto it = registry.find(key); it != registry.end()) {
    if (auto alive = it->second.lock()) return Grid(std::move(alive));
  }

  auto impl = std::make_shared<Impl>();
  impl->dim = dim;
  impl->n = n;
  impl->period = period;
  impl->scale = 2.0 * std::numbers::pi / period;
  const int half = n / 2;
  impl->npts = 1;
  for (int a = 0; a < dim; ++a) impl->npts *= static_cast<std::size_t>(n);
  impl->nspec = impl->npts / static_cast<std::size_t>(n) * static_cast<std::size_t>(half + 1);

  const std::size_t ns = impl->nspec;
  for (int a = 0; a < dim; ++a) {
    impl->k[a].resize(ns);
    impl->kderiv[a].resize(ns);
  }
  impl->magnitude.resize(ns);
  impl->weight.resize(ns);
  impl->nyquist.resize(ns);
  impl->dealias.resize(ns);
  impl->div_grad.resize(ns);
  impl->laplacian.resize(ns);

  const int last = half + 1;
  for (std::size_t s = 0; s < ns; ++s) {
    std::size_t rest = s;
    std::array<int, 3> idx{};
    idx[dim - 1] = static_cast<int>(rest % last);
    rest /= last;
    for (int a = dim - 2; a >= 0; --a) {
      idx[a] = static_cast<int>(rest % n);
      rest /= n;
    }
    double k2 = 0.0, kd2 = 0.0;
    bool nyq = false, keep = true;
    for (int a = 0; a < dim; ++a) {
      const int kk = (a == dim - 1) ? idx[a] : (idx[a] <= half ? idx[a] : idx[a] - n);
      impl->k[a][s] = kk;
      const bool at_nyquist = std::abs(kk) == half;
      nyq = nyq || at_nyquist;
      if (3 * std::abs(kk) > n) keep = false;
      const double kphys = impl->scale * kk;
      impl->kderiv[a][s] = at_nyquist ? 0.0 : kphys;
      k2 += kphys * kphys;
      kd2 += impl->kderiv[a][s] * impl->kderiv[a][s];
    }
    impl->magnitude[s] = std::sqrt(k2);
    const int kl = idx[dim - 1];
    impl->weight[s] = (kl == 0 || kl == half) ? 1.0 : 2.0;
    impl->nyquist[s] = nyq;
    impl->dealias[s] = keep;
    impl->div_grad[s] = -kd2;
    impl->laplacian[s] = -k2;
  }

  const double top = 0.75 * half * impl->scale;
  impl->jmax = std::max(0, static_cast<int>(std::ceil(std::log2(top))) + 1);
  const CutoffPair& cut = standard_cutoff();
  impl->blocks.resize(static_cast<std::size_t>(impl->jmax) + 2);
  for (int j = -1; j <= impl->jmax; ++j) {
    auto& sym = impl->blocks[static_cast<std::size_t>(j + 1)];
    sym.resize(ns);
    for (std::size_t s = 0; s < ns; ++s) {
      const double xi = impl->magnitude[s];
      sym[s] = (j < 0) ? cut.chi(xi) : cut.chi(std::ldexp(xi, -j - 1)) - cut.chi(std::ldexp(xi, -j));
    }
  }

  {
    std::lock_guard plan_lock(planner_mutex());
    std::array<int, 3> dims{n, n, n};
    double* real = fftw_alloc_real(impl->npts);
    fftw_complex* cplx = fftw_alloc_complex(impl->nspec);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    impl->r2c = fftw_plan_dft_r2c(dim, dims.data(), real, cplx, flags);
    impl->c2r = fftw_plan_dft_c2r(dim, dims.data(), cplx, real, flags);
    fftw_free(real);
    fftw_free(cplx);
  }

  registry[key] = impl;
  return Grid(std::move(impl));
}

int Grid::dim() const { return impl_->dim; }
int Grid::n() const { return impl_->n; }
double Grid::period() const { return impl_->period; }
double Grid::scale() const { return impl_->scale; }
std::size_t Grid::size() const { return impl_->npts; }
std::size_t Grid::spectral_size() const { return impl_->nspec; }
int Grid::max_block() const { return impl_->jmax; }

std::span<const int> Grid::wavenumber(int axis) const { return impl_->k.at(axis); }
std::span<const double> Grid::frequency_magnitude() const { return impl_->magnitude; }
std::span<const double> Grid::hermitian_weight() const { return impl_->weight; }
std::span<const unsigned char> Grid::nyquist_mask() const { return impl_->nyquist; }
std::span<const unsigned char> Grid::dealias_mask() const { return impl_->dealias; }
std::span<const double> Grid::derivative_wavenumber(int axis) const {
  return impl_->kderiv.at(axis);
}
std::span<const double> Grid::div_grad_symbol() const { return impl_->div_grad; }
std::span<const double> Grid::laplacian_symbol() const { return impl_->laplacian; }

std::span<const double> Grid::block_symbol(int j) const {
  if (j < -1 || j > impl_->jmax) return {};
  return impl_->blocks[static_cast<std::size_t>(j + 1)];
}

std::size_t Grid::slot_of(std::span<const int> k) const {
  const int n = impl_->n, half = n / 2, d = impl_->dim;
  if (static_cast<int>(k.size()) != d) return static_cast<std::size_t>(-1);
  std::size_t s = 0;
  for (int a = 0; a < d; ++a) {
    int kk = k[a];
    if (kk <= -half || kk > half) return static_cast<std::size_t>(-1);
    if (a == d - 1) {
      if (kk < 0) return static_cast<std::size_t>(-1);
      s = s * static_cast<std::size_t>(half + 1) + static_cast<std::size_t>(kk);
    } else {
      if (kk < 0) kk += n;
      s = s * static_cast<std::size_t>(n) + static_cast<std::size_t>(kk);
    }
  }
  return s;
}

std::array<int, 3> Grid::sample_index(std::size_t flat) const {
  std::array<int, 3> idx{};
  for (int a = impl_->dim - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % impl_->n);
    flat /= impl_->n;
  }
  return idx;
}

std::array<double, 3> Grid::coordinates(std::size_t flat) const {
  const auto idx = sample_index(flat);
  const double h = spacing();
  return {idx[0] * h, idx[1] * h, idx[2] * h};
}

void Grid::forward(std::span<const double> samples, std::span<Complex> coeffs) const {
  // r2c does not modify its input for out-of-place transforms.
  fftw_execute_dft_r2c(impl_->r2c, const_cast<double*>(samples.data()),
                       reinterpret_cast<fftw_complex*>(coeffs.data()));
  const double inv = 1.0 / static_cast<double>(impl_->npts);
  for (auto& c : coeffs) c *= inv;
}

void Grid::inverse(std::span<const Complex> coeffs, std::span<double> samples) const {
  // c2r overwrites its input, so work on a private copy.
  thread_local std::vector<Complex> scratch;
  scratch.assign(coeffs.begin(), coeffs.end());
  fftw_execute_dft_c2r(impl_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()),
                       samples.data());
}

bool Grid::operator==(const Grid& other) const {
  if (impl_ == other.impl_) return true;
  if (!impl_ || !other.impl_) return false;
  return impl_->dim == other.impl_->dim && impl_->n == other.impl_->n &&
         impl_->period == other.impl_->period;
}

}  // namespace bzm
