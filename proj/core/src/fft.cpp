#include "parobs/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

#include "parobs/errors.hpp"

namespace parobs {

namespace {

// FFTW planning is not thread-safe, so plan construction takes a global lock.
// Each thread keeps its own plans plus aligned buffers; execution on private
// buffers is safe without locking.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanPair {
  fftw_complex* buffer = nullptr;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  std::size_t size = 0;

  ~PlanPair() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    if (buffer) fftw_free(buffer);
  }
};

using ShapeKey = std::array<std::size_t, kMaxDim + 1>;  // dim, n0, n1, n2

PlanPair& plans_for(const Grid& grid) {
  thread_local std::map<ShapeKey, std::unique_ptr<PlanPair>> cache;
  ShapeKey key{};
  key[0] = static_cast<std::size_t>(grid.dim());
  for (int i = 0; i < grid.dim(); ++i) key[i + 1] = grid.points(i);
  auto& slot = cache[key];
  if (!slot) {
    auto pair = std::make_unique<PlanPair>();
    pair->size = grid.size();
    pair->buffer = fftw_alloc_complex(grid.size());
    int dims[kMaxDim];
    for (int i = 0; i < grid.dim(); ++i) dims[i] = static_cast<int>(grid.points(i));
    std::lock_guard<std::mutex> lock(planner_mutex());
    pair->forward = fftw_plan_dft(grid.dim(), dims, pair->buffer, pair->buffer,
                                  FFTW_FORWARD, FFTW_ESTIMATE);
    pair->backward = fftw_plan_dft(grid.dim(), dims, pair->buffer, pair->buffer,
                                   FFTW_BACKWARD, FFTW_ESTIMATE);
    slot = std::move(pair);
  }
  return *slot;
}

// Parity of the lattice index sum; the centered-origin phase is (-1)^parity.
bool odd_parity(const Grid& grid, std::size_t flat) {
  auto multi = grid.unflatten(flat);
  std::size_t s = 0;
  for (int i = 0; i < grid.dim(); ++i) s += multi[i];
  return (s & 1) != 0;
}

}  // namespace

Field dft(const Field& f) {
  check_space(f, Space::Physical, "dft");
  PlanPair& plans = plans_for(f.grid);
  auto* buf = reinterpret_cast<std::complex<double>*>(plans.buffer);
  for (std::size_t i = 0; i < f.values.size(); ++i) buf[i] = f.values[i];
  fftw_execute_dft(plans.forward, plans.buffer, plans.buffer);
  Field out = Field::zeros(f.grid, Space::Frequency);
  const double h = f.grid.cell_volume();
  for (std::size_t i = 0; i < out.values.size(); ++i)
    out.values[i] = (odd_parity(f.grid, i) ? -h : h) * buf[i];
  return out;
}

Field idft(const Field& f) {
  check_space(f, Space::Frequency, "idft");
  PlanPair& plans = plans_for(f.grid);
  auto* buf = reinterpret_cast<std::complex<double>*>(plans.buffer);
  for (std::size_t i = 0; i < f.values.size(); ++i)
    buf[i] = odd_parity(f.grid, i) ? -f.values[i] : f.values[i];
  fftw_execute_dft(plans.backward, plans.buffer, plans.buffer);
  Field out = Field::zeros(f.grid, Space::Physical);
  const double scale = 1.0 / (f.grid.cell_volume() * static_cast<double>(f.grid.size()));
  for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = scale * buf[i];
  return out;
}

}  // namespace parobs
