#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

#include "helpers.hpp"
#include "parobs/errors.hpp"
#include "parobs/fft.hpp"
#include "parobs/pfld.hpp"
#include "parobs/probes.hpp"
#include "parobs/quadrature.hpp"
#include "parobs/rng.hpp"

using namespace parobs;
using namespace parobs::testing;

TEST_CASE("grid layout: centered coordinates and signed frequencies") {
  const Grid g = grid1(8, 4.0);
  CHECK(g.spacing(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g.coordinate(0, 0) == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(g.coordinate(0, 4) == doctest::Approx(0.0).epsilon(1e-15));
  // Bins 0..3 carry modes 0..3, bins 4..7 carry -4..-1.
  CHECK(g.signed_mode(0, 3) == 3);
  CHECK(g.signed_mode(0, 4) == -4);
  CHECK(g.signed_mode(0, 7) == -1);
  CHECK(g.frequency(0, 1) == doctest::Approx(2.0 * std::numbers::pi / 4.0).epsilon(1e-15));
  CHECK(g.nyquist(0) == doctest::Approx(std::numbers::pi / g.spacing(0)).epsilon(1e-15));

  const Grid g2 = grid2(8, 16, 1.0, 2.0);
  for (std::size_t flat = 0; flat < g2.size(); ++flat)
    CHECK(g2.flatten(g2.unflatten(flat)) == flat);
}

TEST_CASE("grid rejects degenerate shapes") {
  CHECK_THROWS_AS(Grid({}, {}), Error);
  CHECK_THROWS_AS(Grid({8}, {0.0}), Error);
  CHECK_THROWS_AS(Grid({0}, {1.0}), Error);
  CHECK_THROWS_AS(Grid({12}, {1.0}), Error);
  CHECK_THROWS_AS(Grid({4}, {1.0}), Error);
  CHECK_THROWS_AS(Grid({8, 8}, {1.0}), Error);
  CHECK_THROWS_AS(Grid({8, 8, 8, 8}, {1.0, 1.0, 1.0, 1.0}), Error);
}

TEST_CASE("dft matches the quadratic-cost reference transform") {
  SplitRng rng(7);
  for (const Grid& g : {grid1(16, 5.0), grid2(16, 8, 2.5, 1.25)}) {
    Field f = Field::zeros(g, Space::Physical);
    for (auto& v : f.values) v = {rng.next_gaussian(), rng.next_gaussian()};

    const Field fast = dft(f);
    const Field slow = direct_dft(f);
    CHECK(max_abs_diff(fast, slow) <= 1e-12 * max_abs(slow));

    const Field back = idft(fast);
    CHECK(max_abs_diff(back, f) <= 1e-13 * max_abs(f));
    CHECK(max_abs_diff(back, direct_idft(slow)) <= 1e-12 * max_abs(f));
  }
}

TEST_CASE("dft and idft enforce the space tag") {
  const Grid g = grid1(8, 1.0);
  const Field phys = Field::zeros(g, Space::Physical);
  const Field freq = Field::zeros(g, Space::Frequency);
  CHECK_THROWS_AS(dft(freq), TagMismatch);
  CHECK_THROWS_AS(idft(phys), TagMismatch);
}

TEST_CASE("Plancherel identity holds at machine precision") {
  SplitRng rng(11);
  for (const Grid& g : {grid1(64, 7.0), grid2(16, 8, 3.0, 1.0)}) {
    Field f = Field::zeros(g, Space::Physical);
    for (auto& v : f.values) v = {rng.next_gaussian(), rng.next_gaussian()};
    const Field fhat = dft(f);

    double spectral = 0.0;
    for (const auto& v : fhat.values) spectral += std::norm(v);
    spectral *= g.spectral_cell_volume() / std::pow(2.0 * std::numbers::pi, g.dim());

    const double physical = lp_norm(f, 2.0);
    CHECK(rel_err(physical * physical, spectral) <= 1e-12);
  }
}

TEST_CASE("norms, pairing, and restriction agree with direct sums") {
  const Grid g = grid1(32, 2.0);
  SplitRng rng(3);
  Field f = Field::zeros(g, Space::Physical);
  Field w = Field::zeros(g, Space::Physical);
  Field ind = Field::zeros(g, Space::Physical);
  for (std::size_t i = 0; i < g.size(); ++i) {
    f.values[i] = {rng.next_gaussian(), rng.next_gaussian()};
    w.values[i] = {rng.next_gaussian(), rng.next_gaussian()};
    ind.values[i] = (i % 3 == 0) ? 1.0 : 0.0;
  }
  const double h = g.cell_volume();

  double sum1 = 0.0, sum2 = 0.0, sup = 0.0;
  std::complex<double> bilinear = 0.0, hermitian = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    sum1 += std::abs(f.values[i]) * h;
    sum2 += std::norm(f.values[i]) * h;
    sup = std::max(sup, std::abs(f.values[i]));
    bilinear += f.values[i] * w.values[i] * h;
    hermitian += f.values[i] * std::conj(w.values[i]) * h;
  }
  CHECK(rel_err(lp_norm(f, 1.0), sum1) <= 1e-14);
  CHECK(rel_err(lp_norm(f, 2.0), std::sqrt(sum2)) <= 1e-14);
  CHECK(rel_err(lp_norm(f, std::numeric_limits<double>::infinity()), sup) <= 1e-15);
  CHECK(std::abs(pairing(f, w) - bilinear) <= 1e-13 * std::abs(bilinear));
  CHECK(std::abs(inner(f, w) - hermitian) <= 1e-13 * std::abs(hermitian));

  const Field masked = restrict_to(f, ind);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i % 3 == 0)
      CHECK(masked.values[i] == f.values[i]);
    else
      CHECK(masked.values[i] == std::complex<double>(0.0));
  }

  const Grid other = grid1(16, 2.0);
  CHECK_THROWS_AS(pairing(f, Field::zeros(other, Space::Physical)), GridMismatch);
}

TEST_CASE("quadrature rules against a closed-form integral") {
  // int_0^1 e^{-x^2} dx = sqrt(pi)/2 * erf(1)
  const auto f = [](double x) { return std::exp(-x * x); };
  const double exact = 0.5 * std::sqrt(std::numbers::pi) * std::erf(1.0);

  CHECK(rel_err(integrate_trapezoid(f, 0.0, 1.0, 256), exact) <= 1e-5);
  const RefinedIntegral refined = integrate_trapezoid_refined(f, 0.0, 1.0, 256);
  CHECK(rel_err(refined.value, exact) <= 3e-6);
  CHECK(refined.refinement_delta <= 1e-5);
  CHECK(refined.refinement_delta > 0.0);

  CHECK(rel_err(integrate_gauss(f, 0.0, 1.0, 4), exact) <= 1e-14);
  CHECK(gauss_nodes(0.0, 1.0, 4).size() == 32);

  const auto fc = [](double x) { return std::exp(std::complex<double>(0.0, x)); };
  const std::complex<double> wantc = {std::sin(1.0), 1.0 - std::cos(1.0)};
  CHECK(std::abs(integrate_gauss_complex(fc, 0.0, 1.0, 4) - wantc) <= 1e-14);
}

TEST_CASE("pfld files round-trip bitwise and reject junk") {
  const Grid g = grid2(8, 16, 1.5, 2.0);
  SplitRng rng(5);
  Field f = Field::zeros(g, Space::Physical);
  for (auto& v : f.values) v = {rng.next_gaussian(), rng.next_gaussian()};

  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "parobs_pfld_test";
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = dir / "field.pfld";
  write_pfld(path, f);
  const Field back = read_pfld(path);

  REQUIRE(back.grid == g);
  CHECK(back.space == Space::Physical);
  CHECK(std::memcmp(back.values.data(), f.values.data(),
                    f.values.size() * sizeof f.values[0]) == 0);

  // Truncated payload and wrong magic both fail loudly.
  std::ofstream(dir / "short.pfld", std::ios::binary) << "PFLD";
  CHECK_THROWS_AS(read_pfld(dir / "short.pfld"), Error);
  std::ofstream(dir / "junk.pfld", std::ios::binary) << "not a field at all";
  CHECK_THROWS_AS(read_pfld(dir / "junk.pfld"), Error);
  CHECK_THROWS_AS(read_pfld(dir / "missing.pfld"), Error);
}

TEST_CASE("split rng streams are deterministic and label-separated") {
  SplitRng a(42);
  SplitRng b(42);
  for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());

  SplitRng base(42);
  SplitRng left = base.split("left");
  SplitRng right = base.split("right");
  SplitRng left_again = base.split("left");
  CHECK(left.next_u64() == left_again.next_u64());
  CHECK(left.next_u64() != right.next_u64());
  CHECK(base.split(0).next_u64() != base.split(1).next_u64());

  // Box-Muller output should look like a standard normal at coarse scale.
  SplitRng g(2024);
  double mean = 0.0, var = 0.0;
  const int n = 4096;
  for (int i = 0; i < n; ++i) {
    const double x = g.next_gaussian();
    mean += x;
    var += x * x;
  }
  mean /= n;
  var = var / n - mean * mean;
  CHECK(std::abs(mean) <= 0.05);
  CHECK(std::abs(var - 1.0) <= 0.1);
}

TEST_CASE("random probes zero the Nyquist rows") {
  const Grid g = grid1(16, 4.0);
  const Field f = random_field(g, SplitRng(9));
  const Field fhat = dft(f);
  // Bin N/2 carries the unpaired Nyquist mode.  The probe is synthesized in
  // spectral space and returned physical, so analyzing it again leaves the
  // zeroed rows at transform roundoff rather than exact zero.
  CHECK(std::abs(fhat.values[8]) <= 1e-13 * max_abs(fhat));

  const Field band = random_band_limited(g, SplitRng(9), 3.0);
  const Field bhat = dft(band);
  const double floor = 1e-13 * max_abs(bhat);
  for (std::size_t k = 0; k < g.size(); ++k)
    if (std::abs(g.frequency(0, k)) > 3.0) CHECK(std::abs(bhat.values[k]) <= floor);
}
