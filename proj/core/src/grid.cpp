#include "parobs/grid.hpp"

#include <numbers>

#include "parobs/errors.hpp"

namespace parobs {

namespace {

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid::Grid(std::vector<std::size_t> points, std::vector<double> extents) {
  if (points.empty() || points.size() > kMaxDim || points.size() != extents.size())
    throw DegenerateParams("grid: need matching point/extent lists with 1 <= d <= 3");
  dim_ = static_cast<int>(points.size());
  total_ = 1;
  for (int i = 0; i < dim_; ++i) {
    if (!power_of_two(points[i]) || points[i] < 8)
      throw DegenerateParams("grid: points per axis must be a power of two >= 8");
    if (!(extents[i] > 0.0))
      throw DegenerateParams("grid: extents must be positive");
    points_[i] = points[i];
    extents_[i] = extents[i];
    total_ *= points[i];
  }
  // Row-major: the last axis is contiguous.
  std::size_t stride = 1;
  for (int i = dim_ - 1; i >= 0; --i) {
    strides_[i] = stride;
    stride *= points_[i];
  }
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int i = 0; i < dim_; ++i) v *= spacing(i);
  return v;
}

double Grid::spectral_cell_volume() const {
  double v = 1.0;
  for (int i = 0; i < dim_; ++i) v *= 2.0 * std::numbers::pi / extents_[i];
  return v;
}

double Grid::frequency(int axis, std::size_t index) const {
  return 2.0 * std::numbers::pi * static_cast<double>(signed_mode(axis, index)) /
         extents_[axis];
}

double Grid::nyquist(int axis) const {
  return std::numbers::pi * static_cast<double>(points_[axis]) / extents_[axis];
}

std::array<std::size_t, kMaxDim> Grid::unflatten(std::size_t flat) const {
  std::array<std::size_t, kMaxDim> multi{};
  for (int i = 0; i < dim_; ++i) {
    multi[i] = flat / strides_[i];
    flat %= strides_[i];
  }
  return multi;
}

std::size_t Grid::flatten(const std::array<std::size_t, kMaxDim>& multi) const {
  std::size_t flat = 0;
  for (int i = 0; i < dim_; ++i) flat += multi[i] * strides_[i];
  return flat;
}

std::vector<double> Grid::frequency_table(int axis) const {
  std::vector<double> table(points_[axis]);
  for (std::size_t k = 0; k < points_[axis]; ++k) table[k] = frequency(axis, k);
  return table;
}

}  // namespace parobs
