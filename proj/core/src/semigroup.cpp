#include "parobs/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parobs/errors.hpp"
#include "parobs/fft.hpp"

namespace parobs {

SemigroupOperator::SemigroupOperator(EllipticSymbol symbol, Grid grid)
    : symbol_(std::move(symbol)), grid_(std::move(grid)) {
  if (symbol_.dim() != grid_.dim())
    throw GridMismatch("semigroup: symbol and grid dimensions differ");
  symbol_values_.resize(grid_.size());
  for (std::size_t flat = 0; flat < grid_.size(); ++flat) {
    const auto multi = grid_.unflatten(flat);
    std::array<double, kMaxDim> xi{};
    for (int i = 0; i < grid_.dim(); ++i) xi[i] = grid_.frequency(i, multi[i]);
    symbol_values_[flat] = symbol_.eval(xi);
  }
}

std::shared_ptr<const std::vector<std::complex<double>>> SemigroupOperator::multiplier(
    double t) const {
  if (t < 0.0) throw NegativeTime("semigroup: negative evolution time");
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(t);
    if (it != cache_.end()) return it->second;
  }
  auto values = std::make_shared<std::vector<std::complex<double>>>(grid_.size());
  for (std::size_t i = 0; i < symbol_values_.size(); ++i)
    (*values)[i] = std::exp(-t * symbol_values_[i]);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  if (cache_.size() > 256) cache_.clear();  // sweeps over many t must not hoard memory
  return cache_.emplace(t, std::move(values)).first->second;
}

Field SemigroupOperator::apply(double t, const Field& f) const {
  if (!(f.grid == grid_)) throw GridMismatch("semigroup: field grid differs from operator grid");
  check_space(f, Space::Physical, "semigroup apply");
  auto mult = multiplier(t);
  Field spectrum = dft(f);
  for (std::size_t i = 0; i < spectrum.values.size(); ++i) spectrum.values[i] *= (*mult)[i];
  return idft(spectrum);
}

Field SemigroupOperator::heat_kernel(double t) const {
  if (!(t > 0.0)) throw NegativeTime("heat_kernel: needs t > 0");
  auto mult = multiplier(t);
  Field spectrum{grid_, Space::Frequency, *mult};
  return idft(spectrum);
}

KernelBoundFit verify_kernel_bound(const SemigroupOperator& op,
                                   const std::vector<double>& t_samples,
                                   const KernelFitOptions& options) {
  const Grid& grid = op.grid();
  const int d = grid.dim();
  const int m = op.symbol().order();
  const double omega = std::max(op.symbol().shift_omega(), 0.0);
  if (t_samples.empty()) throw DegenerateParams("verify_kernel_bound: no time samples");

  std::vector<double> c2_grid(options.c2_scan);
  for (std::size_t i = 0; i < options.c2_scan; ++i) {
    const double frac = options.c2_scan == 1
                            ? 0.0
                            : static_cast<double>(i) / static_cast<double>(options.c2_scan - 1);
    c2_grid[i] = options.c2_min * std::pow(options.c2_max / options.c2_min, frac);
  }

  // c1(c2) is the sup over admitted samples of
  //   |k_t(x)| e^{-omega t} t^{d/m} exp(+c2 (|x|^m/t)^{1/(m-1)}).
  // It is nondecreasing in c2; past the true decay rate it explodes, which is
  // what the cap rule detects.
  std::vector<double> c1_of(c2_grid.size(), 0.0);
  KernelBoundFit fit;
  const double decay_exponent = 1.0 / static_cast<double>(m - 1);

  for (double t : t_samples) {
    if (!(t > 0.0)) throw NegativeTime("verify_kernel_bound: needs t > 0");
    const Field kernel = op.heat_kernel(t);
    double peak = 0.0;
    for (const auto& v : kernel.values) peak = std::max(peak, std::abs(v));
    const double floor = options.noise_floor * peak;
    const double t_pow = std::pow(t, static_cast<double>(d) / static_cast<double>(m));

    double sup_ratio = 0.0;
    for (std::size_t flat = 0; flat < kernel.values.size(); ++flat) {
      const auto multi = grid.unflatten(flat);
      double radius2 = 0.0;
      bool inside = true;
      for (int i = 0; i < d; ++i) {
        const double x = grid.coordinate(i, multi[i]);
        if (std::abs(x) > 0.25 * grid.extent(i)) inside = false;
        radius2 += x * x;
      }
      if (!inside) continue;
      const double magnitude = std::abs(kernel.values[flat]);
      if (magnitude < floor) continue;
      const double base = magnitude * std::exp(-omega * t) * t_pow;
      sup_ratio = std::max(sup_ratio, base);
      const double arg = std::pow(std::pow(std::sqrt(radius2), m) / t, decay_exponent);
      for (std::size_t j = 0; j < c2_grid.size(); ++j) {
        // exp can overflow for hopeless c2; saturate instead of producing inf*0.
        const double grown = arg * c2_grid[j] < 700.0
                                 ? base * std::exp(c2_grid[j] * arg)
                                 : std::numeric_limits<double>::infinity();
        c1_of[j] = std::max(c1_of[j], grown);
      }
    }
    fit.t_samples.push_back(t);
    fit.sup_ratio.push_back(sup_ratio);
  }

  const double c1_min = *std::min_element(c1_of.begin(), c1_of.end());
  if (!(c1_min > 0.0) || !std::isfinite(c1_min))
    throw FitFailed("verify_kernel_bound: no admissible samples above the noise floor");
  std::size_t best = 0;
  for (std::size_t j = 0; j < c2_grid.size(); ++j)
    if (c1_of[j] <= options.cap_factor * c1_min) best = j;
  fit.c1 = c1_of[best];
  fit.c2 = c2_grid[best];
  fit.omega = omega;
  fit.pass = std::isfinite(fit.c1) && fit.c1 > 0.0;
  return fit;
}

GrowthBound estimate_growth_bound(const SemigroupOperator& op,
                                  const std::vector<double>& t_samples,
                                  const std::vector<Field>& probe_fields) {
  if (t_samples.size() < 2) throw DegenerateParams("estimate_growth_bound: need >= 2 samples");
  std::vector<double> norms(t_samples.size());
  for (std::size_t i = 0; i < t_samples.size(); ++i) {
    if (!(t_samples[i] > 0.0)) throw NegativeTime("estimate_growth_bound: needs t > 0");
    norms[i] = lp_norm(op.heat_kernel(t_samples[i]), 1.0);
    if (!(norms[i] > 0.0)) throw FitFailed("estimate_growth_bound: vanishing kernel norm");
  }

  // Least squares on log ||k_t||_1 = log M + omega t.
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  const auto n = static_cast<double>(t_samples.size());
  for (std::size_t i = 0; i < t_samples.size(); ++i) {
    st += t_samples[i];
    sy += std::log(norms[i]);
    stt += t_samples[i] * t_samples[i];
    sty += t_samples[i] * std::log(norms[i]);
  }
  const double denom = n * stt - st * st;
  if (denom == 0.0) throw FitFailed("estimate_growth_bound: degenerate time samples");
  double omega = (n * sty - st * sy) / denom;

  // The certificate already guarantees growth at most e^{omega_cert t}; a fit
  // claiming more is noise, so fall back to the certified shift.
  const double omega_cert = std::max(op.symbol().shift_omega(), 0.0);
  if (omega > omega_cert) omega = omega_cert;

  GrowthBound bound;
  bound.omega = omega;
  bound.M = 1.0;  // ||S_0|| = 1 pins the envelope at t = 0
  for (std::size_t i = 0; i < t_samples.size(); ++i)
    bound.M = std::max(bound.M, norms[i] * std::exp(-omega * t_samples[i]));
  for (const auto& probe : probe_fields) {
    const double base = lp_norm(probe, 2.0);
    if (base == 0.0) continue;
    for (double t : t_samples) {
      const double ratio = lp_norm(op.apply(t, probe), 2.0) / base;
      bound.M = std::max(bound.M, ratio * std::exp(-omega * t));
    }
  }
  return bound;
}

}  // namespace parobs
