#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "helpers.hpp"
#include "parobs/errors.hpp"
#include "parobs/fft.hpp"
#include "parobs/probes.hpp"
#include "parobs/projector.hpp"
#include "parobs/semigroup.hpp"

using namespace parobs;
using namespace parobs::testing;

namespace {

SymbolTerm term1(int a, std::complex<double> c) {
  SymbolTerm t;
  t.alpha = {a, 0, 0};
  t.coeff = c;
  return t;
}

}  // namespace

TEST_CASE("cutoff profile glues smoothly between the plateaus") {
  const CutoffProfile eta;
  CHECK(eta(0.0) == 1.0);
  CHECK(eta(0.5) == 1.0);
  CHECK(eta(1.0) == 0.0);
  CHECK(eta(7.0) == 0.0);
  double previous = 1.0;
  for (int i = 0; i <= 100; ++i) {
    const double value = eta(0.5 + 0.5 * i / 100.0);
    CHECK(value <= previous + 1e-15);
    CHECK(value >= 0.0);
    CHECK(value <= 1.0);
    previous = value;
  }
  // Partition property of the glue: eta(r) + eta(3/2 - r) = 1 inside the
  // transition band, by the symmetry of psi(1-u) + psi(u).
  for (int i = 1; i < 50; ++i) {
    const double r = 0.5 + 0.5 * i / 50.0;
    CHECK(eta(r) + eta(1.5 - r) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(CutoffProfile(1.0, 0.5), DegenerateParams);
  CHECK_THROWS_AS(CutoffProfile(0.0, 1.0), DegenerateParams);
}

TEST_CASE("band projector is a smooth multiplier commuting with the flow") {
  const Grid g = grid1(256, 16.0);
  const BandProjector proj(g, 6.0);
  SplitRng rng(13);
  const Field f = random_field(g, rng);

  // Defining property: the spectrum is damped by exactly the stored
  // multiplier.  (The smooth glue makes this a near-projection only: inside
  // the transition band eta is strictly between 0 and 1.)
  const Field once = proj.apply(f);
  const Field fhat = dft(f);
  const Field phat = dft(once);
  const auto& eta = proj.multiplier();
  double mult_err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    mult_err = std::max(mult_err, std::abs(phat.values[i] - eta[i] * fhat.values[i]));
  CHECK(mult_err <= 1e-13 * max_abs(fhat));

  // Applying it twice squares the glue, so the result is damped pointwise.
  const Field twice = proj.apply(once);
  const Field that = dft(twice);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(std::abs(that.values[i]) <= std::abs(phat.values[i]) * (1.0 + 1e-12) + 1e-13);

  // Complement sums back to the identity exactly in exact arithmetic.
  const Field rest = proj.apply_complement(f);
  Field sum = once;
  for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += rest.values[i];
  CHECK(max_abs_diff(sum, f) <= 1e-13 * max_abs(f));

  // Fourier multipliers commute, projector and semigroup in either order.
  const SemigroupOperator flow(
      EllipticSymbol::certify(1, 2, {term1(2, 1.0), term1(1, {0.0, 1.0})}), g);
  const Field ab = proj.apply(flow.apply(0.3, f));
  const Field ba = flow.apply(0.3, proj.apply(f));
  CHECK(max_abs_diff(ab, ba) <= 1e-12 * max_abs(ab));
}

TEST_CASE("band projector fixes the core and kills the tail") {
  const Grid g = grid1(256, 16.0);
  const double lambda = 6.0;
  const BandProjector proj(g, lambda);
  SplitRng rng(29);

  const Field core = random_band_limited(g, rng.split("core"), 0.45 * lambda);
  CHECK(max_abs_diff(proj.apply(core), core) <= 1e-13 * max_abs(core));

  const Field tail = frequency_comb(g, 1.05 * lambda, 2.0 * lambda);
  CHECK(max_abs(proj.apply(tail)) <= 1e-13 * max_abs(tail));
  CHECK(max_abs_diff(proj.apply_complement(tail), tail) <= 1e-13 * max_abs(tail));
}

TEST_CASE("cutoff l1 mass is invariant across the lambda ladder") {
  // The continuum value is a pure profile constant; on a grid that resolves
  // the transition band the measured values collapse onto it.
  const Grid g = grid1(4096, 32.0 * std::numbers::pi);
  const double base = cutoff_l1_norm(g, 4.0);
  for (double lambda : {8.0, 16.0}) {
    const double value = cutoff_l1_norm(g, lambda);
    CHECK(rel_err(value, base) <= 5e-3);
  }
  CHECK(base >= 1.0);  // dominates the projector's p -> p operator norm scale

  // A sharper glue pays with a larger convolution kernel.
  const double sharper = cutoff_l1_norm(g, 8.0, CutoffProfile(0.85, 1.0));
  CHECK(sharper > cutoff_l1_norm(g, 8.0) * 1.1);

  // Transition band below the grid resolution is refused.
  CHECK_THROWS_AS(cutoff_l1_norm(grid1(8, 1.0), 1e5), UnderResolved);
}

TEST_CASE("pure power dissipation beats the claimed rate") {
  const Grid g = grid1(512, 16.0 * std::numbers::pi);
  std::vector<double> times;
  for (int i = 1; i <= 16; ++i) times.push_back(0.05 + (1.0 - 0.05) * (i - 1) / 15.0);
  SplitRng rng(7);

  for (double lambda : {4.0, 8.0}) {
    const auto probes = dissipation_probe_set(g, lambda, rng.split("p"), 6);
    const DissipationReport report =
        measure_dissipation_laplacian(g, 2, lambda, times, probes);
    CHECK(report.rate_theoretical ==
          doctest::Approx(std::ldexp(1.0, -4) * lambda * lambda).epsilon(1e-15));
    CHECK(report.pass);
    CHECK(report.slope_fit <= -0.95 * report.rate_theoretical);
    CHECK(report.prefactor_fit > 0.0);
    // Every sampled ratio sits under the fitted envelope by construction.
    for (std::size_t i = 0; i < report.t_samples.size(); ++i)
      CHECK(report.ratio[i] <=
            report.prefactor_fit * std::exp(-report.rate_theoretical * report.t_samples[i]) *
                (1.0 + 1e-9));
  }
}

TEST_CASE("general symbol dissipation activates above lambda_star") {
  const Grid g = grid1(512, 16.0 * std::numbers::pi);
  std::vector<double> times;
  for (int i = 1; i <= 16; ++i) times.push_back(0.05 + (1.0 - 0.05) * (i - 1) / 15.0);
  SplitRng rng(11);

  const EllipticSymbol drift =
      EllipticSymbol::certify(1, 2, {term1(2, 1.0), term1(1, {0.0, 1.0})});
  const double lambda = 8.0;
  const auto probes = dissipation_probe_set(g, lambda, rng.split("d"), 6);
  const DissipationReport report =
      measure_dissipation_general(drift, g, lambda, times, probes);
  CHECK(report.rate_theoretical ==
        doctest::Approx(std::ldexp(1.0, -6) * drift.ellipticity_c() * lambda * lambda)
            .epsilon(1e-15));
  CHECK(report.pass);

  // A zeroth-order excitation pushes lambda_star to 8; at or below it the
  // claimed rate is not in force.
  const EllipticSymbol shifted =
      EllipticSymbol::certify(1, 2, {term1(2, 1.0), term1(0, -1.0)});
  CHECK(shifted.lambda_star() == doctest::Approx(8.0).epsilon(1e-12));
  CHECK_THROWS_AS(
      measure_dissipation_general(shifted, g, 8.0, times, probes),
      LambdaBelowThreshold);
  const DissipationReport above =
      measure_dissipation_general(shifted, g, 9.0, times,
                                  dissipation_probe_set(g, 9.0, rng.split("s"), 6));
  CHECK(above.pass);

  // A band beyond the resolved spectrum leaves nothing above the noise
  // floor to fit.
  CHECK_THROWS_AS(measure_dissipation_laplacian(g, 2, 1e5, times, probes), FitFailed);
}
