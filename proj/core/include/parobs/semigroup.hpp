#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "parobs/field.hpp"
#include "parobs/symbols.hpp"

namespace parobs {

// The semigroup generated by -a(D): S_t f = idft( e^{-t a(xi)} dft f ).
// Evolution is exact in time; there is no stepping error, only transform
// roundoff.  Symbol samples on the dual lattice are evaluated once, and the
// multiplier for each requested t is cached (population is idempotent, so a
// concurrent cache fill can only rewrite identical values).
class SemigroupOperator {
 public:
  SemigroupOperator(EllipticSymbol symbol, Grid grid);

  /// S_t f for t >= 0.  Throws NegativeTime for t < 0, GridMismatch/TagMismatch
  /// for incompatible fields.
  Field apply(double t, const Field& f) const;

  /// Convolution kernel k_t = idft(e^{-t a}); physical-space field, t > 0.
  Field heat_kernel(double t) const;

  const EllipticSymbol& symbol() const { return symbol_; }
  const Grid& grid() const { return grid_; }

  /// a(xi_k) on the dual lattice, in field storage order.
  const std::vector<std::complex<double>>& symbol_values() const { return symbol_values_; }

  std::shared_ptr<const std::vector<std::complex<double>>> multiplier(double t) const;

 private:
  EllipticSymbol symbol_;
  Grid grid_;
  std::vector<std::complex<double>> symbol_values_;

  mutable std::mutex cache_mutex_;
  mutable std::map<double, std::shared_ptr<const std::vector<std::complex<double>>>> cache_;
};

/// Pointwise multiplier fit of |k_t(x)| <= c1 e^{omega t} t^{-d/m}
/// exp(-c2 (|x|^m / t)^{1/(m-1)}).
struct KernelBoundFit {
  double c1 = 0.0;
  double c2 = 0.0;
  double omega = 0.0;  // shift used on the e^{omega t} factor
  bool pass = false;
  /// Largest |k_t(x)| over the admitted samples, per t (diagnostics).
  std::vector<double> t_samples;
  std::vector<double> sup_ratio;  // sup over x of |k_t| / (t^{-d/m} envelope at c2 = 0)
};

struct KernelFitOptions {
  std::size_t c2_scan = 64;     // log-spaced candidates in [c2_min, c2_max]
  double c2_min = 1e-4;
  double c2_max = 1.0;
  double cap_factor = 10.0;     // admit c2 while c1(c2) <= cap_factor * min c1
  double noise_floor = 1e-13;   // fraction of the kernel peak below which samples
                                // are transform noise and are excluded
};

// The scan fixes, for each candidate c2, the smallest c1 making the bound hold
// on every admitted sample; it then reports the largest c2 whose c1 stays
// within cap_factor of the scan minimum.  Samples are restricted to |x| at
// most a quarter extent (away from the periodization seam) and above the
// noise floor, where the pointwise kernel values are numerically meaningful.
KernelBoundFit verify_kernel_bound(const SemigroupOperator& op,
                                   const std::vector<double>& t_samples,
                                   const KernelFitOptions& options = {});

struct GrowthBound {
  double M = 1.0;
  double omega = 0.0;
  double omega_plus() const { return omega > 0.0 ? omega : 0.0; }
};

// Envelope || S_t ||_{p->p} <= ||k_t||_1 <= M e^{omega t}: omega comes from a
// least-squares fit of log ||k_t||_1 against t, clamped to the certified shift
// when the fit is looser, and M is lifted until the envelope dominates every
// sampled ||k_t||_1 as well as every probe ratio ||S_t f||_2 / ||f||_2.
GrowthBound estimate_growth_bound(const SemigroupOperator& op,
                                  const std::vector<double>& t_samples,
                                  const std::vector<Field>& probe_fields = {});

}  // namespace parobs
