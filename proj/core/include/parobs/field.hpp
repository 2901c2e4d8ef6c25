#pragma once

#include <complex>
#include <vector>

#include "parobs/grid.hpp"

namespace parobs {

enum class Space { Physical, Frequency };

// A complex scalar field sampled on a Grid, tagged with its representation.
// Physical fields hold point samples f(x_j); frequency fields hold the
// continuum-normalized coefficients fhat(xi_k) produced by dft().
struct Field {
  Grid grid;
  Space space = Space::Physical;
  std::vector<std::complex<double>> values;

  static Field zeros(const Grid& grid, Space space);
};

/// L_p norm of a physical field, h-weighted; p may be infinity.
double lp_norm(const Field& f, double p);

/// Pointwise product with a 0/1 indicator living on the same grid.
Field restrict_to(const Field& f, const Field& indicator);

/// Bilinear pairing integral(f * g) without conjugation; this is the pairing
/// under which the dual semigroup has the reflected symbol.
std::complex<double> pairing(const Field& f, const Field& g);

/// Hermitian inner product integral(f * conj(g)).
std::complex<double> inner(const Field& f, const Field& g);

void check_same_grid(const Field& a, const Field& b, const char* what);
void check_space(const Field& f, Space expected, const char* what);

// Small arithmetic helpers used by the iterative solvers.
void axpy(std::complex<double> alpha, const Field& x, Field& y);  // y += alpha*x
void scale(Field& f, std::complex<double> alpha);
Field subtract(const Field& a, const Field& b);

}  // namespace parobs
