#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "helpers.hpp"
#include "parobs/errors.hpp"
#include "parobs/probes.hpp"
#include "parobs/thickness.hpp"

using namespace parobs;
using namespace parobs::testing;

namespace {

Field indicator_from_bits(const Grid& g, const std::vector<int>& bits) {
  Field ind = Field::zeros(g, Space::Physical);
  for (std::size_t i = 0; i < g.size(); ++i) ind.values[i] = bits[i] ? 1.0 : 0.0;
  return ind;
}

// Reference thickness: walk every periodic translate of the cell-aligned
// window and count occupied cells directly.  Cubic cost, no sliding sums.
long long min_window_count(const Grid& g, const std::vector<int>& bits,
                           const std::vector<std::size_t>& window) {
  long long best = -1;
  std::array<std::size_t, kMaxDim> offset{};
  const auto count_at = [&](const std::array<std::size_t, kMaxDim>& at) {
    long long count = 0;
    std::array<std::size_t, kMaxDim> cursor{};
    const auto recurse = [&](auto&& self, int axis) -> void {
      if (axis == g.dim()) {
        std::array<std::size_t, kMaxDim> multi{};
        for (int i = 0; i < g.dim(); ++i) multi[i] = (at[i] + cursor[i]) % g.points(i);
        count += bits[g.flatten(multi)];
        return;
      }
      for (cursor[axis] = 0; cursor[axis] < window[axis]; ++cursor[axis])
        self(self, axis + 1);
    };
    recurse(recurse, 0);
    return count;
  };
  const auto scan = [&](auto&& self, int axis) -> void {
    if (axis == g.dim()) {
      const long long count = count_at(offset);
      if (best < 0 || count < best) best = count;
      return;
    }
    for (offset[axis] = 0; offset[axis] < g.points(axis); ++offset[axis])
      self(self, axis + 1);
  };
  scan(scan, 0);
  return best;
}

}  // namespace

TEST_CASE("window counts match the translate-by-translate reference") {
  SplitRng rng(101);

  const Grid g1 = grid1(64, 4.0);
  for (int draw = 0; draw < 50; ++draw) {
    std::vector<int> bits(g1.size());
    SplitRng local = rng.split("d1").split(static_cast<std::uint64_t>(draw));
    for (auto& b : bits) b = local.next_double() < 0.4 ? 1 : 0;
    const Field ind = indicator_from_bits(g1, bits);
    const std::size_t w = 1 + draw % 32;
    const std::vector<double> box = {g1.spacing(0) * static_cast<double>(w)};
    const auto [count, cells] = measure_thickness_counts(ind, box);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0] == w);
    CHECK(count == min_window_count(g1, bits, {w}));
    CHECK(measure_thickness(ind, box) ==
          static_cast<double>(count) / static_cast<double>(w));
  }

  const Grid g2 = grid2(16, 16, 2.0, 3.0);
  for (int draw = 0; draw < 20; ++draw) {
    std::vector<int> bits(g2.size());
    SplitRng local = rng.split("d2").split(static_cast<std::uint64_t>(draw));
    for (auto& b : bits) b = local.next_double() < 0.6 ? 1 : 0;
    const Field ind = indicator_from_bits(g2, bits);
    const std::size_t wx = 1 + draw % 16;
    const std::size_t wy = 1 + (3 * draw) % 16;
    const std::vector<double> box = {g2.spacing(0) * static_cast<double>(wx),
                                     g2.spacing(1) * static_cast<double>(wy)};
    const auto [count, cells] = measure_thickness_counts(ind, box);
    CHECK(count == min_window_count(g2, bits, {wx, wy}));
    CHECK(measure_thickness(ind, box) ==
          static_cast<double>(count) / static_cast<double>(wx * wy));
  }
}

TEST_CASE("thickness is translation invariant and monotone under inclusion") {
  const Grid g = grid1(64, 4.0);
  SplitRng rng(55);
  std::vector<int> bits(g.size());
  for (auto& b : bits) b = rng.next_double() < 0.3 ? 1 : 0;
  bits[17] = 1;  // keep the set nonempty
  const std::vector<double> box = {g.spacing(0) * 12.0};

  const auto [count, cells] = measure_thickness_counts(indicator_from_bits(g, bits), box);
  for (std::size_t shift : {1ul, 7ul, 33ul}) {
    std::vector<int> rolled(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) rolled[(i + shift) % g.size()] = bits[i];
    const auto [rolled_count, rolled_cells] =
        measure_thickness_counts(indicator_from_bits(g, rolled), box);
    CHECK(rolled_count == count);
    CHECK(rolled_cells == cells);
  }

  std::vector<int> fatter = bits;
  for (std::size_t i = 0; i < g.size(); i += 5) fatter[i] = 1;
  const auto [fat_count, fat_cells] =
      measure_thickness_counts(indicator_from_bits(g, fatter), box);
  CHECK(fat_count >= count);
}

TEST_CASE("box validation") {
  const Grid g = grid1(64, 4.0);
  Field ind = Field::zeros(g, Space::Physical);
  ind.values[0] = 1.0;
  CHECK_THROWS_AS(measure_thickness(ind, {8.0}), BoxExceedsDomain);
  CHECK_THROWS_AS(measure_thickness(ind, {0.1001}), DegenerateParams);  // 1.6016 cells
  CHECK_THROWS_AS(measure_thickness(ind, {1.0, 1.0}), DegenerateParams);
  CHECK_THROWS_AS(measure_thickness(ind, {-1.0}), DegenerateParams);
  // The full extent is a legal window.
  CHECK(measure_thickness(ind, {4.0}) == doctest::Approx(1.0 / 64.0).epsilon(1e-15));

  Field not01 = Field::zeros(g, Space::Physical);
  not01.values[3] = 0.5;
  CHECK_THROWS_AS(measure_thickness(not01, {1.0}), DegenerateParams);

  // A translate that misses the set entirely cannot define a thick set.
  CHECK_THROWS_AS(ThickSet(ind, {1.0}), DegenerateParams);
  const ThickSet whole(ind, {4.0});
  CHECK(whole.rho() == doctest::Approx(1.0 / 64.0).epsilon(1e-15));
  CHECK(whole.box_l1() == 4.0);
  CHECK(whole.cell_count() == 1);
}

TEST_CASE("generators produce the advertised densities") {
  const Grid g = grid1(64, 4.0);
  ThickSetSpec slabs;
  slabs.kind = ThickSetSpec::Kind::PeriodicSlabs;
  slabs.width_cells = 8;
  slabs.period_cells = 16;
  const ThickSet a = generate_thick_set(g, slabs, SplitRng(1));
  CHECK(a.rho() == 0.5);
  CHECK(a.box().size() == 1);
  CHECK(a.box()[0] == doctest::Approx(16.0 * g.spacing(0)).epsilon(1e-15));
  CHECK(a.cell_count() == 32);

  slabs.phase_cells = 5;
  const ThickSet b = generate_thick_set(g, slabs, SplitRng(1));
  CHECK(b.rho() == 0.5);
  CHECK(b.cell_count() == 32);

  slabs.width_cells = 16;
  CHECK_THROWS_AS(generate_thick_set(g, slabs, SplitRng(1)), DegenerateParams);
  slabs.width_cells = 8;
  slabs.period_cells = 24;  // does not divide 64
  CHECK_THROWS_AS(generate_thick_set(g, slabs, SplitRng(1)), DegenerateParams);
  slabs.period_cells = 16;
  slabs.axis = 1;
  CHECK_THROWS_AS(generate_thick_set(g, slabs, SplitRng(1)), DegenerateParams);

  const Grid g2 = grid2(16, 16, 2.0, 2.0);
  ThickSetSpec board;
  board.kind = ThickSetSpec::Kind::Checkerboard;
  board.cell_size = 2;
  const ThickSet c = generate_thick_set(g2, board, SplitRng(1));
  CHECK(c.rho() == 0.5);
  CHECK(c.cell_count() == g2.size() / 2);
  board.cell_size = 3;
  CHECK_THROWS_AS(generate_thick_set(g2, board, SplitRng(1)), DegenerateParams);

  ThickSetSpec random;
  random.kind = ThickSetSpec::Kind::RandomCells;
  random.density = 1.0;
  const ThickSet full = generate_thick_set(g, random, SplitRng(1));
  CHECK(full.rho() == 1.0);
  random.density = 0.0;
  CHECK_THROWS_AS(generate_thick_set(g, random, SplitRng(1)), DegenerateParams);
  random.density = 0.5;
  const ThickSet half = generate_thick_set(g, random, SplitRng(7));
  CHECK(half.rho() > 0.0);
  CHECK(half.rho() <= 1.0);
}

TEST_CASE("restriction inequality holds across a nested slab sweep") {
  const Grid g = grid1(512, 16.0 * std::numbers::pi);
  const double lambda = 4.0;
  SplitRng rng(2025);

  // Nested sets with the same reference box: rho = 1/8, 1/4, 1/2.
  std::vector<ThickSet> sets;
  for (std::size_t width : {4ul, 8ul, 16ul}) {
    ThickSetSpec spec;
    spec.kind = ThickSetSpec::Kind::PeriodicSlabs;
    spec.width_cells = width;
    spec.period_cells = 32;
    sets.push_back(generate_thick_set(g, spec, rng));
  }
  CHECK(sets[0].rho() == 0.125);
  CHECK(sets[1].rho() == 0.25);
  CHECK(sets[2].rho() == 0.5);

  // One probe union for all three sets, so the empirical constants are
  // comparable across the sweep.
  std::vector<Field> probes;
  for (const auto& set : sets) {
    const auto part = spectral_inequality_probe_set(set, lambda, rng.split("probes"), 16);
    probes.insert(probes.end(), part.begin(), part.end());
  }

  double previous = std::numeric_limits<double>::infinity();
  for (const auto& set : sets) {
    const SpectralInequalityReport report = measure_ls_constant(set, lambda, 2.0, probes);
    CHECK(report.pass);
    CHECK(report.excluded_probes == 0);
    CHECK(report.c_emp >= 1.0 - 1e-12);  // restriction can only lose mass
    CHECK(report.c_emp <= previous * (1.0 + 1e-12));
    previous = report.c_emp;

    // The predicted constants have the closed Kovrijkine form.
    const double log_kd_rho = std::log(std::pow(10.0, g.dim()) / set.rho());
    CHECK(rel_err(report.d0, std::exp(10.0 * g.dim() * log_kd_rho)) <= 1e-12);
    CHECK(rel_err(report.d1, 2.0 * set.box_l1() * log_kd_rho) <= 1e-12);
    CHECK(rel_err(report.log_prediction, std::log(report.d0) + report.d1 * lambda) <= 1e-9);
  }
}

TEST_CASE("restriction measurement excludes invisible probes") {
  const Grid g = grid1(128, 8.0);
  ThickSetSpec spec;
  spec.kind = ThickSetSpec::Kind::PeriodicSlabs;
  spec.width_cells = 16;
  spec.period_cells = 32;
  const ThickSet set = generate_thick_set(g, spec, SplitRng(3));

  std::vector<Field> probes = {Field::zeros(g, Space::Physical)};
  CHECK_THROWS_AS(measure_ls_constant(set, 4.0, 2.0, probes), ZeroRestriction);

  probes.push_back(random_band_limited(g, SplitRng(4), 4.0));
  const SpectralInequalityReport report = measure_ls_constant(set, 4.0, 2.0, probes);
  CHECK(report.excluded_probes == 1);
  CHECK(report.c_emp > 0.0);

  CHECK_THROWS_AS(measure_ls_constant(set, 4.0, 2.0, probes, 1.0), DegenerateParams);
  CHECK_THROWS_AS(measure_ls_constant(set, -1.0, 2.0, probes), DegenerateParams);
}
