#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "helpers.hpp"
#include "parobs/errors.hpp"
#include "parobs/probes.hpp"
#include "parobs/semigroup.hpp"
#include "parobs/symbols.hpp"

using namespace parobs;
using namespace parobs::testing;

namespace {

EllipticSymbol heat1d() { return laplacian_power_symbol(1, 2); }

SymbolTerm term1(int a, std::complex<double> c) {
  SymbolTerm t;
  t.alpha = {a, 0, 0};
  t.coeff = c;
  return t;
}

}  // namespace

TEST_CASE("heat flow of a gaussian matches the closed form") {
  // With a(xi) = xi^2 the gaussian e^{-x^2/2} evolves to
  // (1+2t)^{-1/2} e^{-x^2/(2(1+2t))}; on a 40pi torus the periodization
  // error is far below the roundoff floor.
  const Grid g = grid1(1024, 40.0 * std::numbers::pi);
  const SemigroupOperator flow(heat1d(), g);
  Field f = Field::zeros(g, Space::Physical);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.coordinate(0, j);
    f.values[j] = std::exp(-0.5 * x * x);
  }
  for (double t : {0.1, 0.5, 1.0}) {
    const Field got = flow.apply(t, f);
    double worst = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double x = g.coordinate(0, j);
      const double want = std::exp(-0.5 * x * x / (1.0 + 2.0 * t)) / std::sqrt(1.0 + 2.0 * t);
      worst = std::max(worst, std::abs(got.values[j] - want));
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("two-parameter semigroup law") {
  SplitRng rng(21);
  const Grid ga = grid1(128, 10.0);
  const Grid gb = grid2(32, 16, 6.0, 3.0);
  const EllipticSymbol sa =
      EllipticSymbol::certify(1, 2, {term1(2, 1.0), term1(1, {0.0, 0.5})});
  const EllipticSymbol sb = laplacian_power_symbol(2, 4);
  const SemigroupOperator fa(sa, ga);
  const SemigroupOperator fb(sb, gb);

  const Field pa = random_field(ga, rng.split("a"));
  const Field pb = random_field(gb, rng.split("b"));
  for (const auto& [flow, probe] : {std::pair{&fa, &pa}, std::pair{&fb, &pb}}) {
    const Field one = flow->apply(0.7, flow->apply(0.3, *probe));
    const Field two = flow->apply(1.0, *probe);
    CHECK(max_abs_diff(one, two) <= 1e-12 * max_abs(two));
    // t = 0 is the identity.
    CHECK(max_abs_diff(flow->apply(0.0, *probe), *probe) <= 1e-13 * max_abs(*probe));
  }
}

TEST_CASE("dissipative flows contract the l2 norm") {
  SplitRng rng(4);
  const Grid g = grid1(256, 12.0);
  for (int order : {2, 4}) {
    const SemigroupOperator flow(laplacian_power_symbol(1, order), g);
    const Field f = random_field(g, rng.split(static_cast<std::uint64_t>(order)));
    double previous = lp_norm(f, 2.0);
    for (double t : {0.1, 0.4, 1.0}) {
      const double now = lp_norm(flow.apply(t, f), 2.0);
      CHECK(now <= previous * (1.0 + 1e-12));
      previous = now;
    }
  }
}

TEST_CASE("flow pairs against the reflected-symbol flow") {
  const Grid g = grid1(128, 8.0);
  const EllipticSymbol s =
      EllipticSymbol::certify(1, 2, {term1(2, 1.0), term1(1, {0.0, 1.0})});
  const SemigroupOperator flow(s, g);
  const SemigroupOperator dual(s.adjoint(), g);
  SplitRng rng(17);
  const Field f = random_field(g, rng.split("f"));
  const Field w = random_field(g, rng.split("g"));
  for (double t : {0.05, 0.3, 1.0}) {
    const std::complex<double> lhs = pairing(flow.apply(t, f), w);
    const std::complex<double> rhs = pairing(f, dual.apply(t, w));
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(std::abs(lhs), std::abs(rhs)));
  }
}

TEST_CASE("negative time and foreign grids are rejected") {
  const Grid g = grid1(64, 4.0);
  const SemigroupOperator flow(heat1d(), g);
  const Field f = Field::zeros(g, Space::Physical);
  CHECK_THROWS_AS(flow.apply(-0.1, f), NegativeTime);
  CHECK_THROWS_AS(flow.heat_kernel(0.0), NegativeTime);
  CHECK_THROWS_AS(flow.apply(0.1, Field::zeros(grid1(32, 4.0), Space::Physical)),
                  GridMismatch);
  CHECK_THROWS_AS(SemigroupOperator(laplacian_power_symbol(2, 2), g), GridMismatch);
}

TEST_CASE("kernel envelope fit holds pointwise and sees the gaussian decay") {
  const Grid g = grid1(512, 16.0 * std::numbers::pi);
  const SemigroupOperator flow(heat1d(), g);
  const std::vector<double> times = {0.05, 0.1, 0.2, 0.5, 1.0};
  const KernelBoundFit fit = verify_kernel_bound(flow, times);
  REQUIRE(fit.pass);
  CHECK(fit.c1 > 0.0);
  // The exact heat kernel is (4 pi t)^{-1/2} e^{-x^2/(4t)}: decay constant
  // 1/4.  The scan admits candidates while the matching prefactor stays
  // within cap_factor of the minimum, which reaches one log-spaced step
  // beyond 1/4, so the reported value may sit slightly above it.
  CHECK(fit.c2 > 0.05);
  CHECK(fit.c2 <= 0.31);

  // Independent pointwise audit of the reported envelope.
  for (double t : {0.07, 0.35, 0.8}) {
    const Field kernel = flow.heat_kernel(t);
    double peak = 0.0;
    for (const auto& v : kernel.values) peak = std::max(peak, std::abs(v));
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double x = g.coordinate(0, j);
      if (std::abs(x) > 0.25 * g.extent(0)) continue;
      const double sample = std::abs(kernel.values[j]);
      if (sample <= 1e-13 * peak) continue;
      const double envelope = fit.c1 * std::exp(fit.omega * t) / std::sqrt(t) *
                              std::exp(-fit.c2 * (x * x / t));
      CHECK(sample <= envelope * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("growth envelope dominates the sampled operator norms") {
  const Grid g = grid1(256, 16.0);
  SplitRng rng(31);
  std::vector<Field> probes;
  for (std::size_t i = 0; i < 4; ++i) probes.push_back(random_field(g, rng.split(i)));

  // Heat flow is a contraction; the fitted envelope may dip below e^{0 t}.
  const SemigroupOperator heat(heat1d(), g);
  std::vector<double> times;
  for (int i = 1; i <= 12; ++i) times.push_back(0.1 * i);
  const GrowthBound contraction = estimate_growth_bound(heat, times, probes);
  CHECK(contraction.M >= 1.0);
  CHECK(contraction.omega <= 1e-12);
  CHECK(contraction.omega_plus() == 0.0);
  for (double t : times) {
    const double norm1 = lp_norm(heat.heat_kernel(t), 1.0);
    CHECK(norm1 <= contraction.M * std::exp(contraction.omega * t) * (1.0 + 1e-9));
    for (const auto& f : probes)
      CHECK(lp_norm(heat.apply(t, f), 2.0) <=
            contraction.M * std::exp(contraction.omega * t) * lp_norm(f, 2.0) * (1.0 + 1e-9));
  }

  // A zeroth-order excitation makes the flow genuinely expansive.
  const EllipticSymbol shifted =
      EllipticSymbol::certify(1, 2, {term1(2, 1.0), term1(0, -1.0)});
  const SemigroupOperator expansive(shifted, g);
  const GrowthBound grown = estimate_growth_bound(expansive, times, probes);
  CHECK(grown.omega > 0.5);
  CHECK(grown.omega_plus() == grown.omega);
  for (double t : times)
    CHECK(lp_norm(expansive.heat_kernel(t), 1.0) <=
          grown.M * std::exp(grown.omega * t) * (1.0 + 1e-9));
}

TEST_CASE("multiplier cache returns the identical table") {
  const Grid g = grid1(64, 4.0);
  const SemigroupOperator flow(heat1d(), g);
  const auto a = flow.multiplier(0.25);
  const auto b = flow.multiplier(0.25);
  CHECK(a.get() == b.get());
  CHECK(a->size() == g.size());
}
