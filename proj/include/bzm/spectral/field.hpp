#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "bzm/spectral/grid.hpp"

namespace bzm {

/// Real scalar (1 component) or vector (d components) function on a Grid.
///
/// Samples and spectral coefficients are kept side by side; whichever side
/// was written last is authoritative and the other is refreshed on demand.
/// Const access may trigger that refresh, which is serialized internally so
/// a Field can be read concurrently.
class Field {
 public:
  Field() = default;
  /// Zero field.
  Field(Grid grid, int components);

  Field(const Field& other);
  Field(Field&& other) noexcept;
  Field& operator=(const Field& other);
  Field& operator=(Field&& other) noexcept;
  ~Field() = default;

  static Field scalar(const Grid& grid) { return Field(grid, 1); }
  static Field vector(const Grid& grid) { return Field(grid, grid.dim()); }
  static Field constant(const Grid& grid, double value);

  /// Samples fn(x, component) at every lattice point.
  template <class Fn>
  static Field sample(const Grid& grid, int components, Fn&& fn);

  const Grid& grid() const { return grid_; }
  int components() const { return components_; }
  bool is_vector() const { return components_ == grid_.dim(); }
  bool empty() const { return components_ == 0; }

  std::span<const double> samples(int c = 0) const;
  std::span<const Complex> coeffs(int c = 0) const;
  /// Writable views; the written side becomes authoritative.
  std::span<double> samples_mut(int c = 0);
  std::span<Complex> coeffs_mut(int c = 0);

  Field component(int c) const;
  void set_component(int c, const Field& scalar);
  static Field stack(std::span<const Field> parts);

  /// Adds a*cos(k.x) + b*sin(k.x) (k in integer wavenumbers) to component c.
  void add_mode(int c, std::span<const int> k, double a, double b = 0.0);

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double s);
  Field& axpy(double s, const Field& x);  // this += s * x

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(double s, Field a) { return a *= s; }
  friend Field operator*(Field a, double s) { return a *= s; }
  Field operator-() const { return -1.0 * *this; }

 private:
  enum class Side : unsigned char { physical, spectral, both };

  void check_compatible(const Field& other) const;
  void sync_physical() const;
  void sync_spectral() const;

  Grid grid_;
  int components_ = 0;
  mutable std::vector<double> phys_;
  mutable std::vector<Complex> spec_;
  mutable Side side_ = Side::both;
  mutable std::unique_ptr<std::mutex> sync_ = std::make_unique<std::mutex>();
};

template <class Fn>
Field Field::sample(const Grid& grid, int components, Fn&& fn) {
  Field f(grid, components);
  for (int c = 0; c < components; ++c) {
    auto out = f.samples_mut(c);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(grid.coordinates(i), c);
  }
  return f;
}

}  // namespace bzm
