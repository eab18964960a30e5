#include "bzm/spectral/field.hpp"

#include <algorithm>
#include <string>

#include "bzm/error.hpp"

namespace bzm {

Field::Field(Grid grid, int components) : grid_(std::move(grid)), components_(components) {
  if (!grid_.valid()) throw Error(ErrorKind::invalid_argument, "field needs a grid");
  if (components < 1 || components > grid_.dim()) {
    throw Error(ErrorKind::component_mismatch,
                "component count must be in [1, d], got " + std::to_string(components));
  }
  phys_.assign(grid_.size() * components, 0.0);
  spec_.assign(grid_.spectral_size() * components, Complex{});
  side_ = Side::both;
}

Field::Field(const Field& other) {
  std::lock_guard lock(*other.sync_);
  grid_ = other.grid_;
  components_ = other.components_;
  phys_ = other.phys_;
  spec_ = other.spec_;
  side_ = other.side_;
}

Field::Field(Field&& other) noexcept
    : grid_(std::move(other.grid_)),
      components_(other.components_),
      phys_(std::move(other.phys_)),
      spec_(std::move(other.spec_)),
      side_(other.side_) {
  other.components_ = 0;
}

Field& Field::operator=(const Field& other) {
  if (this == &other) return *this;
  Field copy(other);
  return *this = std::move(copy);
}

Field& Field::operator=(Field&& other) noexcept {
  if (this == &other) return *this;
  grid_ = std::move(other.grid_);
  components_ = other.components_;
  phys_ = std::move(other.phys_);
  spec_ = std::move(other.spec_);
  side_ = other.side_;
  other.components_ = 0;
  return *this;
}

Field Field::constant(const Grid& grid, double value) {
  Field f(grid, 1);
  std::fill(f.phys_.begin(), f.phys_.end(), value);
  f.spec_[0] = value;
  return f;
}

void Field::sync_physical() const {
  std::lock_guard lock(*sync_);
  if (side_ != Side::spectral) return;
  const std::size_t np = grid_.size(), ns = grid_.spectral_size();
  for (int c = 0; c < components_; ++c) {
    grid_.inverse(std::span<const Complex>(spec_).subspan(c * ns, ns),
                  std::span<double>(phys_).subspan(c * np, np));
  }
  side_ = Side::both;
}

void Field::sync_spectral() const {
  std::lock_guard lock(*sync_);
  if (side_ != Side::physical) return;
  const std::size_t np = grid_.size(), ns = grid_.spectral_size();
  for (int c = 0; c < components_; ++c) {
    grid_.forward(std::span<const double>(phys_).subspan(c * np, np),
                  std::span<Complex>(spec_).subspan(c * ns, ns));
  }
  side_ = Side::both;
}

std::span<const double> Field::samples(int c) const {
  sync_physical();
  return std::span<const double>(phys_).subspan(c * grid_.size(), grid_.size());
}

std::span<const Complex> Field::coeffs(int c) const {
  sync_spectral();
  return std::span<const Complex>(spec_).subspan(c * grid_.spectral_size(),
                                                 grid_.spectral_size());
}

std::span<double> Field::samples_mut(int c) {
  sync_physical();
  side_ = Side::physical;
  return std::span<double>(phys_).subspan(c * grid_.size(), grid_.size());
}

std::span<Complex> Field::coeffs_mut(int c) {
  sync_spectral();
  side_ = Side::spectral;
  return std::span<Complex>(spec_).subspan(c * grid_.spectral_size(), grid_.spectral_size());
}

Field Field::component(int c) const {
  if (c < 0 || c >= components_) {
    throw Error(ErrorKind::component_mismatch, "component index out of range");
  }
  Field out(grid_, 1);
  std::lock_guard lock(*sync_);
  const std::size_t np = grid_.size(), ns = grid_.spectral_size();
  std::copy_n(phys_.begin() + c * np, np, out.phys_.begin());
  std::copy_n(spec_.begin() + c * ns, ns, out.spec_.begin());
  out.side_ = side_;
  return out;
}

void Field::set_component(int c, const Field& scalar) {
  if (c < 0 || c >= components_ || scalar.components_ != 1) {
    throw Error(ErrorKind::component_mismatch, "set_component needs a scalar and a valid index");
  }
  check_compatible(scalar);
  auto src = scalar.samples();
  auto dst = samples_mut(c);
  std::copy(src.begin(), src.end(), dst.begin());
}

Field Field::stack(std::span<const Field> parts) {
  if (parts.empty()) throw Error(ErrorKind::component_mismatch, "nothing to stack");
  Field out(parts[0].grid(), static_cast<int>(parts.size()));
  for (std::size_t c = 0; c < parts.size(); ++c) out.set_component(static_cast<int>(c), parts[c]);
  return out;
}

void Field::add_mode(int c, std::span<const int> k, double a, double b) {
  const int d = grid_.dim(), n = grid_.n(), half = n / 2;
  if (static_cast<int>(k.size()) != d) {
    throw Error(ErrorKind::component_mismatch, "wavenumber has wrong length");
  }
  auto wrap = [&](int v) {
    v %= n;
    if (v < 0) v += n;
    return v > half ? v - n : v;
  };
  std::array<int, 3> kp{}, km{};
  for (int i = 0; i < d; ++i) {
    kp[i] = wrap(k[i]);
    km[i] = wrap(-k[i]);
  }
  // a cos + b sin = Re((a - i b) e^{ikx}) = c e^{ikx}/2 + conj(c) e^{-ikx}/2
  const Complex coef(0.5 * a, -0.5 * b);
  auto coeff = coeffs_mut(c);
  auto add_at = [&](std::array<int, 3>& kk, Complex v) {
    if (kk[d - 1] < 0) return;  // implied by Hermitian symmetry
    const std::size_t s = grid_.slot_of(std::span<const int>(kk.data(), d));
    coeff[s] += v;
  };
  const bool self_conjugate = std::equal(kp.begin(), kp.begin() + d, km.begin());
  if (self_conjugate) {
    add_at(kp, Complex(a, 0.0));
    return;
  }
  // Only one of k, -k is stored unless the last component is 0 or N/2.
  const bool both_stored = kp[d - 1] == 0 || kp[d - 1] == half;
  if (both_stored) {
    add_at(kp, coef);
    add_at(km, std::conj(coef));
  } else if (kp[d - 1] > 0) {
    add_at(kp, coef);
  } else {
    add_at(km, std::conj(coef));
  }
}

void Field::check_compatible(const Field& other) const {
  if (!(grid_ == other.grid_)) throw Error(ErrorKind::grid_mismatch, "fields live on different grids");
}

Field& Field::operator+=(const Field& other) { return axpy(1.0, other); }
Field& Field::operator-=(const Field& other) { return axpy(-1.0, other); }

Field& Field::axpy(double s, const Field& x) {
  check_compatible(x);
  if (components_ != x.components_) {
    throw Error(ErrorKind::component_mismatch, "component counts differ");
  }
  if (&x == this) return *this *= (1.0 + s);
  // Combine on whichever side both already have, defaulting to samples.
  std::lock_guard lock_x(*x.sync_);
  const bool spectral = (side_ != Side::physical) && (x.side_ != Side::physical) &&
                        !(side_ == Side::both && x.side_ == Side::both);
  if (spectral) {
    sync_spectral();
    for (std::size_t i = 0; i < spec_.size(); ++i) spec_[i] += s * x.spec_[i];
    side_ = Side::spectral;
  } else if (x.side_ != Side::spectral) {
    sync_physical();
    for (std::size_t i = 0; i < phys_.size(); ++i) phys_[i] += s * x.phys_[i];
    side_ = Side::physical;
  } else {
    sync_spectral();
    for (std::size_t i = 0; i < spec_.size(); ++i) spec_[i] += s * x.spec_[i];
    side_ = Side::spectral;
  }
  return *this;
}

Field& Field::operator*=(double s) {
  std::lock_guard lock(*sync_);
  if (side_ != Side::spectral) {
    for (auto& v : phys_) v *= s;
  }
  if (side_ != Side::physical) {
    for (auto& v : spec_) v *= s;
  }
  return *this;
}

}  // namespace bzm
