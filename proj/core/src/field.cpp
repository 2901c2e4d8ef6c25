#include "parobs/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "parobs/errors.hpp"

namespace parobs {

Field Field::zeros(const Grid& grid, Space space) {
  return Field{grid, space, std::vector<std::complex<double>>(grid.size())};
}

void check_same_grid(const Field& a, const Field& b, const char* what) {
  if (!(a.grid == b.grid)) throw GridMismatch(std::string(what) + ": fields on different grids");
}

void check_space(const Field& f, Space expected, const char* what) {
  if (f.space != expected)
    throw TagMismatch(std::string(what) + (expected == Space::Physical
                                               ? ": expected a physical-space field"
                                               : ": expected a frequency-space field"));
}

double lp_norm(const Field& f, double p) {
  check_space(f, Space::Physical, "lp_norm");
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(p >= 1.0)) throw DegenerateParams("lp_norm: p must lie in [1, inf]");
  // Accumulate relative to the max to avoid overflow/underflow of |v|^p.
  double peak = 0.0;
  for (const auto& v : f.values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  double acc = 0.0;
  for (const auto& v : f.values) acc += std::pow(std::abs(v) / peak, p);
  return peak * std::pow(f.grid.cell_volume() * acc, 1.0 / p);
}

Field restrict_to(const Field& f, const Field& indicator) {
  check_same_grid(f, indicator, "restrict_to");
  check_space(f, Space::Physical, "restrict_to");
  check_space(indicator, Space::Physical, "restrict_to");
  Field out = f;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= indicator.values[i].real();
  return out;
}

std::complex<double> pairing(const Field& f, const Field& g) {
  check_same_grid(f, g, "pairing");
  check_space(f, Space::Physical, "pairing");
  check_space(g, Space::Physical, "pairing");
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) acc += f.values[i] * g.values[i];
  return acc * f.grid.cell_volume();
}

std::complex<double> inner(const Field& f, const Field& g) {
  check_same_grid(f, g, "inner");
  check_space(f, Space::Physical, "inner");
  check_space(g, Space::Physical, "inner");
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) acc += f.values[i] * std::conj(g.values[i]);
  return acc * f.grid.cell_volume();
}

void axpy(std::complex<double> alpha, const Field& x, Field& y) {
  check_same_grid(x, y, "axpy");
  for (std::size_t i = 0; i < y.values.size(); ++i) y.values[i] += alpha * x.values[i];
}

void scale(Field& f, std::complex<double> alpha) {
  for (auto& v : f.values) v *= alpha;
}

Field subtract(const Field& a, const Field& b) {
  check_same_grid(a, b, "subtract");
  Field out = a;
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] -= b.values[i];
  return out;
}

}  // namespace parobs
