#pragma once

#include <vector>

#include "parobs/field.hpp"
#include "parobs/rng.hpp"
#include "parobs/symbols.hpp"

namespace parobs {

// Radial profile eta(r): identically 1 up to `inner`, identically 0 from
// `outer` on, glued in between by the standard smooth partition
//   eta(r) = psi(s(1-u)) / (psi(1-u) + psi(u)),  psi(s) = e^{-1/s} (s > 0),
// with u the normalized position inside the transition band.  All derivatives
// vanish at both ends, so idft(eta(|xi|/lambda)) decays faster than any power.
class CutoffProfile {
 public:
  CutoffProfile() = default;
  CutoffProfile(double inner, double outer);

  double operator()(double r) const;
  double inner() const { return inner_; }
  double outer() const { return outer_; }

 private:
  double inner_ = 0.5;
  double outer_ = 1.0;
};

// Smooth band projector P_lambda f = idft( eta(|xi|/lambda) dft f ).  The
// multiplier equals 1 on the lattice ball |xi| <= lambda/2 and 0 outside
// |xi| >= lambda (for the default profile), so P_lambda fixes fields with
// spectrum in the inner ball and annihilates spectra beyond lambda.
class BandProjector {
 public:
  BandProjector(Grid grid, double lambda, CutoffProfile profile = {});

  Field apply(const Field& f) const;
  Field apply_complement(const Field& f) const;  // (I - P_lambda) f

  double lambda() const { return lambda_; }
  const Grid& grid() const { return grid_; }
  const std::vector<double>& multiplier() const { return multiplier_; }

 private:
  Grid grid_;
  double lambda_;
  CutoffProfile profile_;
  std::vector<double> multiplier_;
};

/// || idft(eta(|.|/lambda)) ||_1 on the grid.  By scaling of the continuum
/// transform this value is independent of lambda; measuring it across a
/// lambda ladder is a discretization check.  Throws UnderResolved when the
/// transition band covers fewer than 4 frequency cells on some axis.
double cutoff_l1_norm(const Grid& grid, double lambda, const CutoffProfile& profile = {});

struct DissipationReport {
  double lambda = 0.0;
  double rate_theoretical = 0.0;  // claimed decay exponent per unit time
  double slope_fit = 0.0;         // least-squares slope of log ratio vs t
  double prefactor_fit = 0.0;     // smallest K with ratio(t) <= K e^{-rate t}
  bool pass = false;
  std::vector<double> t_samples;
  std::vector<double> ratio;      // worst probe ratio per t
};

// Decay of the high-band semigroup remainder: for each sampled t the worst
// probe value of ||(I - P_lambda) S_t f||_p / ||f||_p, fitted against the
// claimed exponential rate.  The report passes when the fitted slope is at
// least as steep as rate * (1 - 0.05) and the prefactor is finite.

/// Rate 2^{-m-2} lambda^m for the pure power symbol |xi|^m (m even).
DissipationReport measure_dissipation_laplacian(const Grid& grid, int m, double lambda,
                                                const std::vector<double>& t_samples,
                                                const std::vector<Field>& probes,
                                                double p = 2.0);

/// Rate 2^{-m-4} c lambda^m for a certified symbol; requires lambda above the
/// activation threshold (throws LambdaBelowThreshold otherwise).
DissipationReport measure_dissipation_general(const EllipticSymbol& symbol, const Grid& grid,
                                              double lambda,
                                              const std::vector<double>& t_samples,
                                              const std::vector<Field>& probes, double p = 2.0);

/// Probe set for the dissipation sweeps: white noise plus frequency combs on
/// the lowest surviving shell of (I - P_lambda), where the complement weight
/// is small but well above roundoff.
std::vector<Field> dissipation_probe_set(const Grid& grid, double lambda, const SplitRng& rng,
                                         std::size_t count);

}  // namespace parobs
