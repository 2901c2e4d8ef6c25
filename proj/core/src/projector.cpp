#include "parobs/projector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "parobs/errors.hpp"
#include "parobs/fft.hpp"
#include "parobs/probes.hpp"
#include "parobs/semigroup.hpp"

namespace parobs {

namespace {

double psi(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

std::vector<double> cutoff_multiplier(const Grid& grid, double lambda,
                                      const CutoffProfile& profile) {
  std::vector<double> mult(grid.size());
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    const auto multi = grid.unflatten(flat);
    double r2 = 0.0;
    for (int i = 0; i < grid.dim(); ++i) {
      const double xi = grid.frequency(i, multi[i]);
      r2 += xi * xi;
    }
    mult[flat] = profile(std::sqrt(r2) / lambda);
  }
  return mult;
}

struct RatioCurve {
  std::vector<double> t;
  std::vector<double> ratio;
};

RatioCurve worst_ratios(const BandProjector& projector, const SemigroupOperator& op,
                        const std::vector<double>& t_samples, const std::vector<Field>& probes,
                        double p) {
  if (probes.empty()) throw DegenerateParams("dissipation: empty probe set");
  std::vector<double> base(probes.size());
  for (std::size_t j = 0; j < probes.size(); ++j) {
    base[j] = lp_norm(probes[j], p);
    if (!(base[j] > 0.0)) throw DegenerateParams("dissipation: zero probe");
  }
  RatioCurve curve;
  for (double t : t_samples) {
    if (t < 0.0) throw NegativeTime("dissipation: negative sample time");
    double worst = 0.0;
    for (std::size_t j = 0; j < probes.size(); ++j) {
      const Field evolved = op.apply(t, probes[j]);
      worst = std::max(worst, lp_norm(projector.apply_complement(evolved), p) / base[j]);
    }
    curve.t.push_back(t);
    curve.ratio.push_back(worst);
  }
  return curve;
}

DissipationReport fit_report(double lambda, double rate, const RatioCurve& curve) {
  DissipationReport report;
  report.lambda = lambda;
  report.rate_theoretical = rate;
  report.t_samples = curve.t;
  report.ratio = curve.ratio;

  // Slope fit on log ratio vs t, ignoring samples that already sank into
  // transform roundoff (they would flatten the slope artificially).
  const double peak = *std::max_element(curve.ratio.begin(), curve.ratio.end());
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  std::size_t kept = 0;
  double prefactor = 0.0;
  for (std::size_t i = 0; i < curve.t.size(); ++i) {
    if (curve.ratio[i] <= 0.0 || curve.ratio[i] < 1e-13 * peak) continue;
    const double y = std::log(curve.ratio[i]);
    st += curve.t[i];
    sy += y;
    stt += curve.t[i] * curve.t[i];
    sty += curve.t[i] * y;
    ++kept;
    prefactor = std::max(prefactor, curve.ratio[i] * std::exp(rate * curve.t[i]));
  }
  if (kept < 2) throw FitFailed("dissipation: too few ratios above the noise floor");
  const double n = static_cast<double>(kept);
  const double denom = n * stt - st * st;
  if (denom == 0.0) throw FitFailed("dissipation: degenerate time samples");
  report.slope_fit = (n * sty - st * sy) / denom;
  report.prefactor_fit = prefactor;
  report.pass = std::isfinite(prefactor) && prefactor > 0.0 &&
                report.slope_fit <= -rate * (1.0 - 0.05);
  return report;
}

}  // namespace

CutoffProfile::CutoffProfile(double inner, double outer) : inner_(inner), outer_(outer) {
  if (!(0.0 < inner && inner < outer)) throw DegenerateParams("cutoff: need 0 < inner < outer");
}

double CutoffProfile::operator()(double r) const {
  if (r <= inner_) return 1.0;
  if (r >= outer_) return 0.0;
  const double u = (r - inner_) / (outer_ - inner_);
  const double up = psi(1.0 - u);
  const double down = psi(u);
  return up / (up + down);
}

BandProjector::BandProjector(Grid grid, double lambda, CutoffProfile profile)
    : grid_(std::move(grid)), lambda_(lambda), profile_(profile) {
  if (!(lambda > 0.0)) throw DegenerateParams("projector: lambda must be positive");
  multiplier_ = cutoff_multiplier(grid_, lambda_, profile_);
}

Field BandProjector::apply(const Field& f) const {
  if (!(f.grid == grid_)) throw GridMismatch("projector: field grid differs");
  check_space(f, Space::Physical, "projector apply");
  Field spectrum = dft(f);
  for (std::size_t i = 0; i < spectrum.values.size(); ++i) spectrum.values[i] *= multiplier_[i];
  return idft(spectrum);
}

Field BandProjector::apply_complement(const Field& f) const {
  if (!(f.grid == grid_)) throw GridMismatch("projector: field grid differs");
  check_space(f, Space::Physical, "projector apply");
  Field spectrum = dft(f);
  for (std::size_t i = 0; i < spectrum.values.size(); ++i)
    spectrum.values[i] *= 1.0 - multiplier_[i];
  return idft(spectrum);
}

double cutoff_l1_norm(const Grid& grid, double lambda, const CutoffProfile& profile) {
  if (!(lambda > 0.0)) throw DegenerateParams("cutoff_l1_norm: lambda must be positive");
  for (int i = 0; i < grid.dim(); ++i) {
    const double cell = 2.0 * std::numbers::pi / grid.extent(i);
    const double band = (profile.outer() - profile.inner()) * lambda;
    if (band < 4.0 * cell || lambda < 8.0 * cell)
      throw UnderResolved("cutoff_l1_norm: transition band spans fewer than 4 frequency cells");
    if (profile.outer() * lambda > grid.nyquist(i))
      throw UnderResolved("cutoff_l1_norm: transition band extends past the Nyquist frequency");
  }
  Field spectrum = Field::zeros(grid, Space::Frequency);
  const auto mult = cutoff_multiplier(grid, lambda, profile);
  for (std::size_t i = 0; i < mult.size(); ++i) spectrum.values[i] = mult[i];
  return lp_norm(idft(spectrum), 1.0);
}

DissipationReport measure_dissipation_laplacian(const Grid& grid, int m, double lambda,
                                                const std::vector<double>& t_samples,
                                                const std::vector<Field>& probes, double p) {
  if (m <= 0 || m % 2 != 0)
    throw DegenerateParams("measure_dissipation_laplacian: m must be even positive");
  const SemigroupOperator op(laplacian_power_symbol(grid.dim(), m), grid);
  const BandProjector projector(grid, lambda);
  const double rate = std::ldexp(1.0, -m - 2) * std::pow(lambda, m);
  return fit_report(lambda, rate, worst_ratios(projector, op, t_samples, probes, p));
}

DissipationReport measure_dissipation_general(const EllipticSymbol& symbol, const Grid& grid,
                                              double lambda,
                                              const std::vector<double>& t_samples,
                                              const std::vector<Field>& probes, double p) {
  if (!(lambda > symbol.lambda_star()))
    throw LambdaBelowThreshold("measure_dissipation_general: lambda is at or below threshold");
  const SemigroupOperator op(symbol, grid);
  const BandProjector projector(grid, lambda);
  const double rate =
      std::ldexp(1.0, -symbol.order() - 4) * symbol.ellipticity_c() *
      std::pow(lambda, symbol.order());
  return fit_report(lambda, rate, worst_ratios(projector, op, t_samples, probes, p));
}

std::vector<Field> dissipation_probe_set(const Grid& grid, double lambda, const SplitRng& rng,
                                         std::size_t count) {
  std::vector<Field> probes;
  // Combs on the lowest frequencies the complement cutoff still sees.  Right
  // at lambda/2 the complement weight 1 - eta is below double roundoff (the
  // glue vanishes to every order), so the shells start a little higher where
  // the weight is ~1e-3 yet the decay exponent is still close to the worst
  // case (lambda/2)^m.
  probes.push_back(frequency_comb(grid, 0.55 * lambda, 0.65 * lambda));
  probes.push_back(frequency_comb(grid, 0.65 * lambda, 0.80 * lambda));
  const std::size_t random_count = count > probes.size() ? count - probes.size() : 1;
  for (std::size_t i = 0; i < random_count; ++i)
    probes.push_back(random_field(grid, rng.split(i)));
  return probes;
}

}  // namespace parobs
