#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "parobs/control.hpp"
#include "parobs/fft.hpp"
#include "parobs/probes.hpp"
#include "parobs/projector.hpp"
#include "parobs/semigroup.hpp"
#include "parobs/symbols.hpp"
#include "parobs/thickness.hpp"

namespace {

parobs::Grid line_grid(std::size_t n) {
  return parobs::Grid({n}, {16.0 * std::numbers::pi});
}

void BM_TransformRoundtrip(benchmark::State& state) {
  const parobs::Grid g = line_grid(static_cast<std::size_t>(state.range(0)));
  const parobs::Field f = parobs::random_field(g, parobs::SplitRng(1));
  for (auto _ : state) {
    parobs::Field back = parobs::idft(parobs::dft(f));
    benchmark::DoNotOptimize(back.values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TransformRoundtrip)->Arg(1024)->Arg(4096)->Arg(16384);

// Fixed evolution time, so the multiplier cache is warm and the cost is the
// transform pair plus the pointwise multiply.
void BM_SemigroupApply(benchmark::State& state) {
  const parobs::Grid g = line_grid(static_cast<std::size_t>(state.range(0)));
  const parobs::SemigroupOperator flow(parobs::laplacian_power_symbol(1, 2), g);
  const parobs::Field f = parobs::random_field(g, parobs::SplitRng(2));
  flow.apply(0.25, f);
  for (auto _ : state) {
    parobs::Field out = flow.apply(0.25, f);
    benchmark::DoNotOptimize(out.values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SemigroupApply)->Arg(1024)->Arg(4096)->Arg(16384);

void BM_BandProjectorApply(benchmark::State& state) {
  const parobs::Grid g = line_grid(static_cast<std::size_t>(state.range(0)));
  const parobs::BandProjector proj(g, 8.0);
  const parobs::Field f = parobs::random_field(g, parobs::SplitRng(3));
  for (auto _ : state) {
    parobs::Field out = proj.apply(f);
    benchmark::DoNotOptimize(out.values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BandProjectorApply)->Arg(1024)->Arg(4096)->Arg(16384);

void BM_ThicknessMeasure(benchmark::State& state) {
  const parobs::Grid g = line_grid(static_cast<std::size_t>(state.range(0)));
  parobs::ThickSetSpec spec;
  spec.kind = parobs::ThickSetSpec::Kind::RandomCells;
  spec.density = 0.5;
  const parobs::ThickSet set = parobs::generate_thick_set(g, spec, parobs::SplitRng(4));
  const std::vector<double> box = {64.0 * g.spacing(0)};
  for (auto _ : state) {
    double rho = parobs::measure_thickness(set.indicator(), box);
    benchmark::DoNotOptimize(rho);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ThicknessMeasure)->Arg(4096)->Arg(16384)->Arg(65536);

// End-to-end dual-method synthesis on a small problem; dominated by the
// conjugate-gradient Gramian applications (two transforms per knot each).
void BM_ControlSynthesis(benchmark::State& state) {
  const parobs::Grid g({128}, {16.0});
  const parobs::EllipticSymbol heat = parobs::laplacian_power_symbol(1, 2);
  parobs::ThickSetSpec spec;
  spec.width_cells = 32;
  spec.period_cells = 64;
  const parobs::ThickSet set = parobs::generate_thick_set(g, spec, parobs::SplitRng(5));
  parobs::Field x0 = parobs::Field::zeros(g, parobs::Space::Physical);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.coordinate(0, j);
    x0.values[j] = std::exp(-x * x);
  }
  parobs::HumOptions options;
  options.knots = static_cast<std::size_t>(state.range(0));
  options.tolerance = 1e-3;
  options.max_iterations = 5000;
  for (auto _ : state) {
    parobs::ControlSolution sol =
        parobs::synthesize_control_hum(heat, set, x0, 0.5, options);
    benchmark::DoNotOptimize(sol.cost);
  }
}
BENCHMARK(BM_ControlSynthesis)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
