#include "parobs/probes.hpp"

#include <cmath>
#include <string>

#include "parobs/fft.hpp"

namespace parobs {

namespace {

bool on_nyquist_row(const Grid& grid, const std::array<std::size_t, kMaxDim>& multi) {
  for (int i = 0; i < grid.dim(); ++i)
    if (multi[i] == grid.points(i) / 2) return true;
  return false;
}

double radius(const Grid& grid, const std::array<std::size_t, kMaxDim>& multi) {
  double r2 = 0.0;
  for (int i = 0; i < grid.dim(); ++i) {
    const double xi = grid.frequency(i, multi[i]);
    r2 += xi * xi;
  }
  return std::sqrt(r2);
}

}  // namespace

Field random_field(const Grid& grid, SplitRng rng, double decay_scale) {
  Field spectrum = Field::zeros(grid, Space::Frequency);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    const auto multi = grid.unflatten(flat);
    if (on_nyquist_row(grid, multi)) continue;
    double envelope = 1.0;
    if (decay_scale > 0.0) {
      const double r = radius(grid, multi) / decay_scale;
      envelope = std::exp(-r * r);
    }
    spectrum.values[flat] = envelope * std::complex<double>(rng.next_gaussian(),
                                                            rng.next_gaussian());
  }
  return idft(spectrum);
}

Field random_band_limited(const Grid& grid, SplitRng rng, double lambda) {
  Field spectrum = Field::zeros(grid, Space::Frequency);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    const auto multi = grid.unflatten(flat);
    if (on_nyquist_row(grid, multi)) continue;
    bool in_box = true;
    for (int i = 0; i < grid.dim(); ++i)
      if (std::abs(grid.frequency(i, multi[i])) > lambda) in_box = false;
    if (!in_box) continue;
    spectrum.values[flat] = {rng.next_gaussian(), rng.next_gaussian()};
  }
  return idft(spectrum);
}

Field frequency_comb(const Grid& grid, double radius_lo, double radius_hi) {
  Field spectrum = Field::zeros(grid, Space::Frequency);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    const auto multi = grid.unflatten(flat);
    if (on_nyquist_row(grid, multi)) continue;
    const double r = radius(grid, multi);
    if (r > radius_lo && r <= radius_hi) spectrum.values[flat] = 1.0;
  }
  return idft(spectrum);
}

Field fejer_bump(const Grid& grid, double lambda, const std::array<double, kMaxDim>& center) {
  Field spectrum = Field::zeros(grid, Space::Frequency);
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    const auto multi = grid.unflatten(flat);
    if (on_nyquist_row(grid, multi)) continue;
    double weight = 1.0;
    double phase = 0.0;
    for (int i = 0; i < grid.dim(); ++i) {
      const double xi = grid.frequency(i, multi[i]);
      weight *= std::max(0.0, 1.0 - std::abs(xi) / lambda);
      phase -= xi * center[i];
    }
    if (weight == 0.0) continue;
    spectrum.values[flat] = std::polar(weight, phase);
  }
  return idft(spectrum);
}

std::vector<Field> random_probe_set(const Grid& grid, const SplitRng& rng, std::size_t count,
                                    double decay_scale) {
  std::vector<Field> probes;
  probes.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    probes.push_back(random_field(grid, rng.split(i), decay_scale));
  return probes;
}

std::vector<Field> band_limited_probe_set(const Grid& grid, const SplitRng& rng,
                                          std::size_t count, double lambda) {
  std::vector<Field> probes;
  probes.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    probes.push_back(random_band_limited(grid, rng.split(i), lambda));
  return probes;
}

}  // namespace parobs
