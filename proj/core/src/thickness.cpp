#include "parobs/thickness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parobs/errors.hpp"
#include "parobs/probes.hpp"

namespace parobs {

namespace {

std::vector<std::size_t> window_cells(const Grid& grid, const std::vector<double>& box) {
  if (static_cast<int>(box.size()) != grid.dim())
    throw DegenerateParams("thickness: box dimension differs from grid dimension");
  std::vector<std::size_t> cells(box.size());
  for (int i = 0; i < grid.dim(); ++i) {
    if (!(box[i] > 0.0)) throw DegenerateParams("thickness: box lengths must be positive");
    if (box[i] > grid.extent(i) * (1.0 + 1e-12))
      throw BoxExceedsDomain("thickness: box does not fit in the domain");
    const double ratio = box[i] / grid.spacing(i);
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
      throw DegenerateParams("thickness: box length is not an integer number of cells");
    cells[i] = static_cast<std::size_t>(rounded);
    if (cells[i] == 0) throw DegenerateParams("thickness: box narrower than one cell");
    cells[i] = std::min(cells[i], grid.points(i));
  }
  return cells;
}

// Circular sliding-window sums along one axis, in place.  Integer counts keep
// the final minimum exact.
void window_sum_axis(const Grid& grid, int axis, std::size_t window,
                     std::vector<long long>& data) {
  const std::size_t n = grid.points(axis);
  // Stride pattern of the axis within the flattened row-major array.
  std::size_t stride = 1;
  for (int i = grid.dim() - 1; i > axis; --i) stride *= grid.points(i);
  const std::size_t lines = grid.size() / n;
  std::vector<long long> line(n);
  for (std::size_t li = 0; li < lines; ++li) {
    // Base offset of this 1D line: distribute li over the non-axis dims.
    std::size_t rem = li;
    std::size_t base = 0;
    for (int i = grid.dim() - 1; i >= 0; --i) {
      if (i == axis) continue;
      std::size_t dim_stride = 1;
      for (int j = grid.dim() - 1; j > i; --j) dim_stride *= grid.points(j);
      const std::size_t idx = rem % grid.points(i);
      rem /= grid.points(i);
      base += idx * dim_stride;
    }
    for (std::size_t k = 0; k < n; ++k) line[k] = data[base + k * stride];
    long long acc = 0;
    for (std::size_t k = 0; k < window; ++k) acc += line[k % n];
    for (std::size_t k = 0; k < n; ++k) {
      data[base + k * stride] = acc;
      acc -= line[k];
      acc += line[(k + window) % n];
    }
  }
}

}  // namespace

std::pair<long long, std::vector<std::size_t>> measure_thickness_counts(
    const Field& indicator, const std::vector<double>& box) {
  check_space(indicator, Space::Physical, "measure_thickness");
  const Grid& grid = indicator.grid;
  const auto cells = window_cells(grid, box);
  std::vector<long long> counts(grid.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double v = indicator.values[i].real();
    if (v != 0.0 && v != 1.0)
      throw DegenerateParams("thickness: indicator must be 0/1 valued");
    counts[i] = v != 0.0 ? 1 : 0;
  }
  for (int axis = 0; axis < grid.dim(); ++axis) window_sum_axis(grid, axis, cells[axis], counts);
  const long long minimum = *std::min_element(counts.begin(), counts.end());
  return {minimum, cells};
}

double measure_thickness(const Field& indicator, const std::vector<double>& box) {
  const auto [minimum, cells] = measure_thickness_counts(indicator, box);
  double window = 1.0;
  for (std::size_t c : cells) window *= static_cast<double>(c);
  return static_cast<double>(minimum) / window;
}

ThickSet::ThickSet(Field indicator, std::vector<double> box)
    : indicator_(std::move(indicator)), box_(std::move(box)) {
  rho_ = measure_thickness(indicator_, box_);
  if (!(rho_ > 0.0)) throw DegenerateParams("thick set: some box translate misses the set");
}

double ThickSet::box_l1() const {
  double s = 0.0;
  for (double l : box_) s += l;
  return s;
}

std::size_t ThickSet::cell_count() const {
  std::size_t n = 0;
  for (const auto& v : indicator_.values)
    if (v.real() != 0.0) ++n;
  return n;
}

ThickSet generate_thick_set(const Grid& grid, const ThickSetSpec& spec, SplitRng rng) {
  Field indicator = Field::zeros(grid, Space::Physical);
  std::vector<double> box = spec.box;

  switch (spec.kind) {
    case ThickSetSpec::Kind::PeriodicSlabs: {
      if (spec.axis < 0 || spec.axis >= grid.dim())
        throw DegenerateParams("thick set: slab axis out of range");
      if (spec.width_cells == 0 || spec.width_cells >= spec.period_cells)
        throw DegenerateParams("thick set: slab width must satisfy 0 < width < period");
      if (grid.points(spec.axis) % spec.period_cells != 0)
        throw DegenerateParams("thick set: slab period must divide the axis point count");
      for (std::size_t flat = 0; flat < grid.size(); ++flat) {
        const auto multi = grid.unflatten(flat);
        const std::size_t pos =
            (multi[spec.axis] + spec.period_cells - spec.phase_cells % spec.period_cells) %
            spec.period_cells;
        if (pos < spec.width_cells) indicator.values[flat] = 1.0;
      }
      if (box.empty())
        for (int i = 0; i < grid.dim(); ++i)
          box.push_back(i == spec.axis ? static_cast<double>(spec.period_cells) * grid.spacing(i)
                                       : grid.extent(i));
      break;
    }
    case ThickSetSpec::Kind::Checkerboard: {
      if (spec.cell_size == 0) throw DegenerateParams("thick set: zero checkerboard cell");
      for (int i = 0; i < grid.dim(); ++i)
        if (grid.points(i) % (2 * spec.cell_size) != 0)
          throw DegenerateParams("thick set: checkerboard cell must halve the axis point count");
      for (std::size_t flat = 0; flat < grid.size(); ++flat) {
        const auto multi = grid.unflatten(flat);
        std::size_t parity = 0;
        for (int i = 0; i < grid.dim(); ++i) parity += multi[i] / spec.cell_size;
        if (parity % 2 == 0) indicator.values[flat] = 1.0;
      }
      if (box.empty())
        for (int i = 0; i < grid.dim(); ++i)
          box.push_back(2.0 * static_cast<double>(spec.cell_size) * grid.spacing(i));
      break;
    }
    case ThickSetSpec::Kind::RandomCells: {
      if (!(spec.density > 0.0 && spec.density <= 1.0))
        throw DegenerateParams("thick set: density must lie in (0, 1]");
      for (auto& v : indicator.values) v = rng.next_double() < spec.density ? 1.0 : 0.0;
      if (box.empty())
        for (int i = 0; i < grid.dim(); ++i) box.push_back(grid.extent(i));
      break;
    }
  }
  return ThickSet(std::move(indicator), std::move(box));
}

SpectralInequalityReport measure_ls_constant(const ThickSet& set, double lambda, double p,
                                             const std::vector<Field>& probes,
                                             double kovrijkine_k) {
  if (!(lambda > 0.0) || !(kovrijkine_k > 1.0))
    throw DegenerateParams("measure_ls_constant: need lambda > 0 and K > 1");
  const int d = set.grid().dim();
  const double log_kd_rho =
      static_cast<double>(d) * std::log(kovrijkine_k) - std::log(set.rho());

  SpectralInequalityReport report;
  report.d0 = std::exp(kovrijkine_k * static_cast<double>(d) * log_kd_rho);
  report.d1 = 2.0 * set.box_l1() * log_kd_rho;
  report.log_prediction =
      kovrijkine_k * static_cast<double>(d) * log_kd_rho + report.d1 * lambda;
  report.prediction = std::exp(report.log_prediction);

  double worst = 0.0;
  for (const auto& probe : probes) {
    const double full = lp_norm(probe, p);
    if (!(full > 0.0)) {
      ++report.excluded_probes;
      continue;
    }
    const double on_set = lp_norm(restrict_to(probe, set.indicator()), p);
    if (!(on_set > 0.0)) {
      ++report.excluded_probes;
      continue;
    }
    worst = std::max(worst, full / on_set);
  }
  if (worst == 0.0)
    throw ZeroRestriction("measure_ls_constant: every probe vanishes on the set");
  report.c_emp = worst;
  report.pass = std::log(worst) <= report.log_prediction;
  return report;
}

std::vector<Field> spectral_inequality_probe_set(const ThickSet& set, double lambda,
                                                 const SplitRng& rng, std::size_t count) {
  const Grid& grid = set.grid();
  std::vector<Field> probes = band_limited_probe_set(grid, rng, count, lambda);

  // Adversarial bump at the site farthest from E (periodic axis-aligned
  // distance, exact brute force at these grid sizes).
  const auto& ind = set.indicator().values;
  std::vector<std::size_t> occupied;
  for (std::size_t i = 0; i < ind.size(); ++i)
    if (ind[i].real() != 0.0) occupied.push_back(i);
  double best = -1.0;
  std::array<double, kMaxDim> center{};
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    if (ind[flat].real() != 0.0) continue;
    const auto multi = grid.unflatten(flat);
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t occ : occupied) {
      const auto omulti = grid.unflatten(occ);
      double dist2 = 0.0;
      for (int i = 0; i < grid.dim(); ++i) {
        double dx = std::abs(grid.coordinate(i, multi[i]) - grid.coordinate(i, omulti[i]));
        dx = std::min(dx, grid.extent(i) - dx);
        dist2 += dx * dx;
      }
      nearest = std::min(nearest, dist2);
      if (nearest < best) break;  // cannot beat the incumbent
    }
    if (nearest > best) {
      best = nearest;
      for (int i = 0; i < grid.dim(); ++i) center[i] = grid.coordinate(i, multi[i]);
    }
  }
  if (best > 0.0) probes.push_back(fejer_bump(grid, lambda, center));
  return probes;
}

}  // namespace parobs
