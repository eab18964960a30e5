#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

namespace bzm {

using Complex = std::complex<double>;

/// Periodic d-dimensional lattice (d = 2 or 3) with N points per axis on the
/// box [0, period)^d, together with its real-to-complex spectral layout and
/// the FFT plans that move between the two.
///
/// Spectral coefficients use the half-spectrum layout: all axes but the last
/// run over N integer wavenumbers (0, 1, ..., N/2 - 1, -N/2, ..., -1); the
/// last axis stores 0..N/2. Coefficients are normalized so that the inverse
/// transform of a coefficient set reproduces the samples, i.e. the forward
/// transform divides by the number of points.
///
/// A Grid is a cheap handle to immutable shared state. Grids with equal
/// (d, N, period) share their state and compare equal.
class Grid {
 public:
  static constexpr double default_period = 2.0 * std::numbers::pi;

  Grid() = default;

  /// Throws ErrorKind::invalid_dimension or ErrorKind::invalid_resolution.
  static Grid make(int dim, int n, double period = default_period);

  int dim() const;
  int n() const;
  double period() const;
  /// Physical angular frequency of integer wavenumber 1, i.e. 2*pi/period.
  double scale() const;
  double spacing() const { return period() / n(); }

  std::size_t size() const;           // N^d samples
  std::size_t spectral_size() const;  // N^(d-1) * (N/2 + 1)

  /// Largest dyadic block index represented on this grid; higher blocks vanish.
  int max_block() const;

  /// Integer wavenumber along `axis` for every spectral slot.
  std::span<const int> wavenumber(int axis) const;
  /// Scaled magnitude |k| * scale for every spectral slot.
  std::span<const double> frequency_magnitude() const;
  /// Weight of each slot in a full-spectrum sum (1 or 2, half-spectrum symmetry).
  std::span<const double> hermitian_weight() const;
  /// True when |k_axis| == N/2 for some axis.
  std::span<const unsigned char> nyquist_mask() const;
  /// True when the slot survives 2/3-rule truncation (all |k_i| <= N/3).
  std::span<const unsigned char> dealias_mask() const;
  /// Scaled wavenumber used by first-order derivatives (Nyquist axes zeroed).
  std::span<const double> derivative_wavenumber(int axis) const;
  /// Symbol of div(grad .): -sum_i derivative_wavenumber(i)^2.
  std::span<const double> div_grad_symbol() const;
  /// Symbol of the Laplacian: -(|k| * scale)^2.
  std::span<const double> laplacian_symbol() const;
  /// Littlewood-Paley multiplier of Delta_j, j in [-1, max_block()].
  std::span<const double> block_symbol(int j) const;

  /// Spectral slot of integer wavenumber k (components in (-N/2, N/2]); the
  /// last component must be >= 0. Returns size_t(-1) when out of range.
  std::size_t slot_of(std::span<const int> k) const;
  /// Multi-index of a physical sample (row-major, last axis fastest).
  std::array<int, 3> sample_index(std::size_t flat) const;
  /// Coordinates of a physical sample.
  std::array<double, 3> coordinates(std::size_t flat) const;

  void forward(std::span<const double> samples, std::span<Complex> coeffs) const;
  void inverse(std::span<const Complex> coeffs, std::span<double> samples) const;

  bool operator==(const Grid& other) const;
  bool valid() const { return static_cast<bool>(impl_); }

  struct Impl;

 private:
  explicit Grid(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

}  // namespace bzm
