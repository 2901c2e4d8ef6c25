#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace parobs {

inline constexpr int kMaxDim = 3;

// Uniform periodic lattice on a centered torus prod_i [-extent_i/2, extent_i/2).
// Physical nodes are x_j = -extent/2 + j*h with h = extent/N; the dual lattice
// carries the frequencies xi_k = 2*pi*s/extent for the signed FFT bin s, so a
// Fourier multiplier sampled on this lattice agrees with its continuum symbol
// at every representable frequency.  The centered origin makes the DFT phase
// factor exactly (-1)^k, which keeps the transforms free of phase roundoff.
class Grid {
 public:
  Grid(std::vector<std::size_t> points, std::vector<double> extents);

  int dim() const { return dim_; }
  std::size_t points(int axis) const { return points_[axis]; }
  double extent(int axis) const { return extents_[axis]; }
  double spacing(int axis) const { return extents_[axis] / static_cast<double>(points_[axis]); }

  /// Total number of lattice sites.
  std::size_t size() const { return total_; }

  /// Volume of one physical cell, prod_i h_i.
  double cell_volume() const;

  /// Volume of one spectral cell, prod_i 2*pi/extent_i.
  double spectral_cell_volume() const;

  double coordinate(int axis, std::size_t index) const {
    return -0.5 * extents_[axis] + spacing(axis) * static_cast<double>(index);
  }

  /// Signed integer mode s for FFT bin k: k for k < N/2, k - N otherwise.
  long long signed_mode(int axis, std::size_t index) const {
    const long long n = static_cast<long long>(points_[axis]);
    const long long k = static_cast<long long>(index);
    return k < n / 2 ? k : k - n;
  }

  double frequency(int axis, std::size_t index) const;

  /// Largest representable |xi| along an axis (the Nyquist magnitude pi/h).
  double nyquist(int axis) const;

  std::array<std::size_t, kMaxDim> unflatten(std::size_t flat) const;
  std::size_t flatten(const std::array<std::size_t, kMaxDim>& multi) const;

  /// Per-axis frequency table, indexed by FFT bin.
  std::vector<double> frequency_table(int axis) const;

  bool operator==(const Grid& other) const = default;

 private:
  int dim_;
  std::size_t total_;
  std::array<std::size_t, kMaxDim> points_{};
  std::array<double, kMaxDim> extents_{};
  std::array<std::size_t, kMaxDim> strides_{};
};

}  // namespace parobs
