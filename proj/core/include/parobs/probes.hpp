#pragma once

#include <vector>

#include "parobs/field.hpp"
#include "parobs/rng.hpp"

namespace parobs {

// Deterministic probe constructions shared by the measurement drivers.  All
// random spectra zero the Nyquist rows so that adjoint identities, which pair
// xi with -xi, hold without a leftover unpaired mode.

/// Random physical field with unit-variance complex Gaussian spectrum.  A
/// positive decay_scale applies the envelope exp(-(|xi|/decay_scale)^2).
Field random_field(const Grid& grid, SplitRng rng, double decay_scale = 0.0);

/// Random field whose spectrum is supported in the box [-lambda, lambda]^d.
Field random_band_limited(const Grid& grid, SplitRng rng, double lambda);

/// Unit coefficients on every lattice frequency with radius_lo < |xi| <= radius_hi.
Field frequency_comb(const Grid& grid, double radius_lo, double radius_hi);

/// Band-limited bump centered at `center`: triangular (Fejer) spectral profile
/// per axis, the most spatially concentrated field with spectrum in the box.
Field fejer_bump(const Grid& grid, double lambda, const std::array<double, kMaxDim>& center);

std::vector<Field> random_probe_set(const Grid& grid, const SplitRng& rng, std::size_t count,
                                    double decay_scale = 0.0);

std::vector<Field> band_limited_probe_set(const Grid& grid, const SplitRng& rng,
                                          std::size_t count, double lambda);

}  // namespace parobs
