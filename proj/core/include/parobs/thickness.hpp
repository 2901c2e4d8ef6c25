#pragma once

#include <utility>
#include <vector>

#include "parobs/field.hpp"
#include "parobs/rng.hpp"

namespace parobs {

// A measurable set E, stored as a 0/1 indicator on the grid, together with
// the reference box lengths L and the measured thickness
//   rho = min over lattice translates x of |E intersect (x + [0,L))| / |[0,L)|.
// The minimum runs over every grid-aligned translate on the periodic lattice,
// which by piecewise constancy of the indicator is the exact minimum over all
// translates with lattice-aligned boxes.
class ThickSet {
 public:
  ThickSet(Field indicator, std::vector<double> box);

  const Field& indicator() const { return indicator_; }
  const Grid& grid() const { return indicator_.grid; }
  const std::vector<double>& box() const { return box_; }
  double rho() const { return rho_; }

  /// |L|_1, the box perimeter sum entering the spectral-inequality constants.
  double box_l1() const;

  /// Number of occupied cells.
  std::size_t cell_count() const;

 private:
  Field indicator_;
  std::vector<double> box_;
  double rho_;
};

/// Exact thickness of an indicator with respect to box lengths L (each an
/// integer number of cells; throws BoxExceedsDomain / DegenerateParams).
double measure_thickness(const Field& indicator, const std::vector<double>& box);

/// The same measurement in integer arithmetic: minimum occupied-cell count
/// over all window positions plus the window cell counts.  This is the value
/// the floating-point rho is derived from.
std::pair<long long, std::vector<std::size_t>> measure_thickness_counts(
    const Field& indicator, const std::vector<double>& box);

struct ThickSetSpec {
  enum class Kind { PeriodicSlabs, Checkerboard, RandomCells };
  Kind kind = Kind::PeriodicSlabs;
  int axis = 0;                 // slabs: normal axis
  std::size_t width_cells = 1;  // slabs: occupied cells per period
  std::size_t period_cells = 2; // slabs: repeat length in cells
  std::size_t phase_cells = 0;  // slabs: offset of the occupied run
  std::size_t cell_size = 1;    // checkerboard block edge in cells
  double density = 0.5;         // random: Bernoulli occupation probability
  std::vector<double> box;      // reference box; empty = one period per axis
};

ThickSet generate_thick_set(const Grid& grid, const ThickSetSpec& spec, SplitRng rng);

struct SpectralInequalityReport {
  double c_emp = 0.0;        // worst ||f||_p / ||f restricted to E||_p over probes
  double d0 = 0.0;           // e^{K d ln(K^d / rho)}
  double d1 = 0.0;           // 2 |L|_1 ln(K^d / rho)
  double log_prediction = 0.0;  // log(d0) + d1 * lambda
  double prediction = 0.0;      // exp of the above; +inf if out of range
  bool pass = false;            // log(c_emp) <= log_prediction
  std::size_t excluded_probes = 0;
};

// Empirical check of the band-limited restriction inequality
//   ||f||_p <= d0 e^{d1 lambda} ||f||_{L_p(E)}
// for spectra supported in [-lambda, lambda]^d.  Probes that vanish
// identically on E are excluded and counted; if all vanish, ZeroRestriction.
SpectralInequalityReport measure_ls_constant(const ThickSet& set, double lambda, double p,
                                             const std::vector<Field>& probes,
                                             double kovrijkine_k = 10.0);

/// Probe set for the inequality: band-limited noise plus one bump parked at
/// the grid point farthest from E.
std::vector<Field> spectral_inequality_probe_set(const ThickSet& set, double lambda,
                                                 const SplitRng& rng, std::size_t count);

}  // namespace parobs
