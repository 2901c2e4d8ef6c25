#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

#include "parobs/fft.hpp"
#include "parobs/field.hpp"
#include "parobs/grid.hpp"

namespace parobs::testing {

inline Grid grid1(std::size_t n, double extent) { return Grid({n}, {extent}); }

inline Grid grid2(std::size_t nx, std::size_t ny, double lx, double ly) {
  return Grid({nx, ny}, {lx, ly});
}

// Quadratic-cost reference transforms, written directly from the continuum
// definitions sampled on the lattice.  The library path goes through FFTW
// and the centering phase; these share nothing with it but the grid.
inline Field direct_dft(const Field& f) {
  const Grid& g = f.grid;
  Field out = Field::zeros(g, Space::Frequency);
  const double h = g.cell_volume();
  for (std::size_t k = 0; k < g.size(); ++k) {
    const auto km = g.unflatten(k);
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const auto jm = g.unflatten(j);
      double phase = 0.0;
      for (int axis = 0; axis < g.dim(); ++axis)
        phase += g.frequency(axis, km[axis]) * g.coordinate(axis, jm[axis]);
      acc += f.values[j] * std::polar(1.0, -phase);
    }
    out.values[k] = h * acc;
  }
  return out;
}

inline Field direct_idft(const Field& f) {
  const Grid& g = f.grid;
  Field out = Field::zeros(g, Space::Physical);
  const double weight = g.spectral_cell_volume() /
                        std::pow(2.0 * std::numbers::pi, g.dim());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const auto jm = g.unflatten(j);
    std::complex<double> acc = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const auto km = g.unflatten(k);
      double phase = 0.0;
      for (int axis = 0; axis < g.dim(); ++axis)
        phase += g.frequency(axis, km[axis]) * g.coordinate(axis, jm[axis]);
      acc += f.values[k] * std::polar(1.0, phase);
    }
    out.values[j] = weight * acc;
  }
  return out;
}

inline double max_abs_diff(const Field& a, const Field& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

inline double max_abs(const Field& f) {
  double worst = 0.0;
  for (const auto& v : f.values) worst = std::max(worst, std::abs(v));
  return worst;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace parobs::testing
