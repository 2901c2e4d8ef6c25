#pragma once

#include "parobs/field.hpp"

namespace parobs {

// Discrete realizations of the continuum transform pair
//   fhat(xi) = integral f(x) e^{-i xi.x} dx,
//   f(x)     = (2 pi)^{-d} integral fhat(xi) e^{i x.xi} dxi.
// On the centered torus the forward map is cell_volume * FFT up to an exact
// (-1)^{k1+...+kd} phase, so dft(f) samples the continuum transform of the
// periodic extension at every lattice frequency.  idft inverts it exactly
// (up to FFT roundoff) and the h-weighted Plancherel identity
//   ||f||_2^2 = (2 pi)^{-d} * spectral_cell_volume * sum |fhat_k|^2
// holds to machine precision.

/// Physical -> frequency.  Throws TagMismatch on a frequency-space input.
Field dft(const Field& f);

/// Frequency -> physical.  Throws TagMismatch on a physical-space input.
Field idft(const Field& f);

}  // namespace parobs
