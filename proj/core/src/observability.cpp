#include "parobs/observability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "parobs/control.hpp"
#include "parobs/errors.hpp"
#include "parobs/probes.hpp"
#include "parobs/quadrature.hpp"

namespace parobs {

namespace {

constexpr double kELn2 = std::numbers::e * std::numbers::ln2;

double log_sum_exp(double a, double b) {
  if (std::isinf(a) && a < 0.0) return b;
  if (std::isinf(b) && b < 0.0) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

void validate_inputs(const ObservabilityInputs& in) {
  if (!(in.gamma1 > 0.0) || !(in.gamma2 > 0.0) || !(in.gamma3 > 0.0))
    throw DegenerateParams("observability: exponents must be positive");
  if (!(in.gamma1 < in.gamma2))
    throw ExponentOrder("observability: need gamma1 < gamma2");
  if (!(in.d0 > 0.0) || !(in.d1 > 0.0) || !(in.d3 > 0.0))
    throw DegenerateParams("observability: d0, d1, d3 must be positive");
  if (!(in.d2 >= 1.0) || !(in.M >= 1.0))
    throw DegenerateParams("observability: d2 and M must be at least 1");
  if (!(in.obs_norm > 0.0) || !(in.lambda_star >= 0.0))
    throw DegenerateParams("observability: bad observation norm or threshold");
  if (!(in.horizon > 0.0)) throw DegenerateParams("observability: horizon must be positive");
  if (!(in.r >= 1.0)) throw DegenerateParams("observability: r must lie in [1, inf]");
}

}  // namespace

ObservabilityConstants compute_abstract_cobs(const ObservabilityInputs& in) {
  validate_inputs(in);
  ObservabilityConstants out;
  out.inputs = in;

  const double gap = in.gamma2 - in.gamma1;
  const double ratio_exp = in.gamma1 * in.gamma2 / gap;

  // Each constant is evaluated twice: literally as displayed, and in log
  // form.  The literal value is what gets reported (it is exact for the
  // small rational inputs the formulas are pinned against); the log form
  // survives the ranges where the literal overflows.
  const double band = 2.0 * std::pow(4.0, in.gamma3);
  double c2 = 4.0 * std::pow(std::pow(2.0, in.gamma1) * std::pow(band, ratio_exp) *
                                 std::pow(in.d1, in.gamma2) / std::pow(in.d3, in.gamma1),
                             1.0 / gap);
  const double log_c2 =
      std::log(4.0) + (in.gamma1 * std::numbers::ln2 + ratio_exp * std::log(band) +
                       in.gamma2 * std::log(in.d1) - in.gamma1 * std::log(in.d3)) /
                          gap;
  if (!std::isfinite(c2)) c2 = std::exp(log_c2);

  const double omega_plus = std::max(in.omega, 0.0);
  const double c3 = omega_plus * (1.0 + 10.0 / kELn2);

  const double body = 4.0 * in.d2 * in.M * in.M * (in.d0 * in.obs_norm + 1.0);
  const double log_alt_uncertainty = 4.0 * in.d1 * std::pow(2.0 * in.lambda_star, in.gamma1);
  double c1 = (4.0 * in.M * in.d0) *
              std::max(std::pow(body, 8.0 / kELn2), std::exp(log_alt_uncertainty));
  out.log_c1 = std::log(4.0 * in.M * in.d0) +
               std::max((8.0 / kELn2) * std::log(body), log_alt_uncertainty);
  if (!std::isfinite(c1)) c1 = std::exp(out.log_c1);

  out.c1 = c1;
  out.c2 = c2;
  out.c3 = c3;
  out.log_cobs = out.log_c1 + c2 / std::pow(in.horizon, in.gamma1 * in.gamma3 / gap) +
                 c3 * in.horizon;
  if (!std::isinf(in.r)) out.log_cobs -= std::log(in.horizon) / in.r;
  out.cobs = std::exp(out.log_cobs);
  return out;
}

ObservabilityConstants compute_parabolic_cobs(const EllipticSymbol& symbol, const ThickSet& set,
                                              const GrowthBound& growth, double horizon,
                                              double r, double dissipation_prefactor,
                                              double kovrijkine_k) {
  if (symbol.dim() != set.grid().dim())
    throw GridMismatch("compute_parabolic_cobs: symbol and set dimensions differ");
  if (!(kovrijkine_k > 1.0))
    throw DegenerateParams("compute_parabolic_cobs: sharpness K must exceed 1");
  if (!(dissipation_prefactor >= 0.0))
    throw DegenerateParams("compute_parabolic_cobs: negative dissipation prefactor");

  const int d = symbol.dim();
  const int m = symbol.order();
  const double log_kd_rho =
      static_cast<double>(d) * std::log(kovrijkine_k) - std::log(set.rho());

  ObservabilityInputs in;
  in.gamma1 = 1.0;
  in.gamma2 = static_cast<double>(m);
  in.gamma3 = 1.0;
  in.d0 = std::exp(kovrijkine_k * static_cast<double>(d) * log_kd_rho);
  in.d1 = 2.0 * set.box_l1() * log_kd_rho;
  in.d2 = std::max(1.0, 2.0 * dissipation_prefactor);
  in.d3 = std::ldexp(symbol.ellipticity_c(), -m - 4);
  in.lambda_star = symbol.lambda_star();
  in.M = growth.M;
  in.omega = growth.omega;
  in.obs_norm = 1.0;
  in.horizon = horizon;
  in.r = r;
  return compute_abstract_cobs(in);
}

ObservabilityRatioReport measure_observability_ratio(const SemigroupOperator& flow,
                                                     const ThickSet& set, double horizon,
                                                     double p, double r,
                                                     const std::vector<Field>& probes,
                                                     std::size_t time_nodes) {
  if (!(set.grid() == flow.grid()))
    throw GridMismatch("measure_observability_ratio: set and semigroup grids differ");
  if (probes.empty()) throw DegenerateParams("measure_observability_ratio: no probes");
  if (time_nodes < 64)
    throw DegenerateParams("measure_observability_ratio: need at least 64 time intervals");
  if (!(horizon > 0.0) || !(p >= 1.0) || !(r >= 1.0))
    throw DegenerateParams("measure_observability_ratio: bad horizon or exponents");

  const Field& ind = set.indicator();
  ObservabilityRatioReport report;
  bool admitted = false;
  for (const auto& probe : probes) {
    const double numerator = lp_norm(flow.apply(horizon, probe), p);
    double denominator;
    if (std::isinf(r)) {
      double sup = 0.0;
      for (std::size_t j = 0; j <= 2 * time_nodes; ++j) {
        const double t =
            horizon * static_cast<double>(j) / static_cast<double>(2 * time_nodes);
        sup = std::max(sup, lp_norm(restrict_to(flow.apply(t, probe), ind), p));
      }
      denominator = sup;
    } else {
      const auto integrand = [&](double t) {
        return std::pow(lp_norm(restrict_to(flow.apply(t, probe), ind), p), r);
      };
      const RefinedIntegral integral =
          integrate_trapezoid_refined(integrand, 0.0, horizon, time_nodes);
      report.worst_refinement = std::max(report.worst_refinement, integral.refinement_delta);
      denominator = std::pow(integral.value, 1.0 / r);
    }
    if (!(denominator > 0.0) || !std::isfinite(denominator)) {
      ++report.excluded_probes;
      continue;
    }
    admitted = true;
    report.c_emp = std::max(report.c_emp, numerator / denominator);
  }
  if (!admitted)
    throw ZeroDenominator("measure_observability_ratio: every probe vanishes on the set");
  return report;
}

IterationReport verify_iteration_inequality(const SemigroupOperator& flow, const ThickSet& set,
                                            const ObservabilityInputs& in, double lambda,
                                            const std::vector<double>& t_grid,
                                            const std::vector<Field>& probes,
                                            std::size_t quad_panels) {
  validate_inputs(in);
  if (!(set.grid() == flow.grid()))
    throw GridMismatch("verify_iteration_inequality: set and semigroup grids differ");
  if (!(lambda > in.lambda_star))
    throw LambdaBelowThreshold("verify_iteration_inequality: lambda at or below threshold");
  if (t_grid.empty() || probes.empty())
    throw DegenerateParams("verify_iteration_inequality: empty time grid or probe set");
  for (double t : t_grid)
    if (!(t > 0.0) || t > in.horizon * (1.0 + 1e-12))
      throw DegenerateParams("verify_iteration_inequality: grid times must lie in (0, T]");

  const Field& ind = set.indicator();
  const double omega_plus = std::max(in.omega, 0.0);
  const double uncertainty_exp = in.d1 * std::pow(lambda, in.gamma1);
  const double log_coef_obs =
      std::log(2.0 * in.M) + omega_plus * in.horizon + std::log(in.d0) + uncertainty_exp;
  const double log_coef_diss = std::log(in.d2) + 2.0 * std::log(in.M) +
                               1.25 * omega_plus * in.horizon + uncertainty_exp +
                               std::log(in.d0 * in.obs_norm + 1.0);
  const double decay = in.d3 * std::pow(lambda, in.gamma2);

  IterationReport report;
  report.worst_slack = std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    IterationSample sample;
    sample.t = t;
    sample.slack = std::numeric_limits<double>::infinity();
    std::size_t sample_probe = 0;
    for (std::size_t pi = 0; pi < probes.size(); ++pi) {
      const Field& probe = probes[pi];
      const double f_t = lp_norm(flow.apply(t, probe), 2.0);
      const double f_quarter = lp_norm(flow.apply(t / 4.0, probe), 2.0);
      const double observed = integrate_gauss(
          [&](double tau) { return lp_norm(restrict_to(flow.apply(tau, probe), ind), 2.0); },
          t / 2.0, t, quad_panels);
      const double term_obs = log_coef_obs - std::log(t) + std::log(observed);
      const double term_diss =
          log_coef_diss - decay * std::pow(t / 4.0, in.gamma3) + std::log(f_quarter);
      const double log_rhs = log_sum_exp(term_obs, term_diss);
      const double log_lhs = std::log(f_t);
      double slack;
      if (std::isinf(log_lhs) && log_lhs < 0.0)
        slack = (std::isinf(log_rhs) && log_rhs < 0.0) ? 0.0 : 1.0;
      else
        slack = 1.0 - std::exp(log_lhs - log_rhs);
      if (slack < sample.slack) {
        sample.slack = slack;
        sample.log_lhs = log_lhs;
        sample.log_rhs = log_rhs;
        sample_probe = pi;
      }
    }
    if (sample.slack < report.worst_slack) {
      report.worst_slack = sample.slack;
      report.worst_t = t;
      report.worst_probe = sample_probe;
    }
    report.samples.push_back(sample);
  }
  report.pass = report.worst_slack >= 0.0;
  return report;
}

DualPairingReport verify_dual_norm_identity(const EllipticSymbol& symbol, const ThickSet& set,
                                            double horizon, std::size_t knots,
                                            const SplitRng& rng, std::size_t pairs,
                                            std::size_t panels_per_knot, double band_limit) {
  if (!(horizon > 0.0) || knots == 0 || pairs == 0 || panels_per_knot == 0)
    throw DegenerateParams("verify_dual_norm_identity: degenerate sampling plan");
  const Grid& grid = set.grid();
  SemigroupOperator flow(symbol, grid);
  SemigroupOperator dual(symbol.adjoint(), grid);
  const Field& ind = set.indicator();

  const auto draw = [&](SplitRng source) {
    return band_limit > 0.0 ? random_band_limited(grid, source, band_limit)
                            : random_field(grid, source);
  };

  std::vector<double> knot_times(knots + 1);
  for (std::size_t k = 0; k <= knots; ++k)
    knot_times[k] = horizon * static_cast<double>(k) / static_cast<double>(knots);

  const auto relative_gap = [](std::complex<double> lhs, std::complex<double> rhs) {
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
  };

  DualPairingReport report;
  report.pairs = pairs;
  const SplitRng forcing_rng = rng.split("dual-forcing");
  const SplitRng probe_rng = rng.split("dual-probe");
  const SplitRng adjoint_rng = rng.split("dual-adjoint");
  for (std::size_t i = 0; i < pairs; ++i) {
    SplitRng ui = forcing_rng.split(i);
    ControlSolution control;
    control.knots = knot_times;
    control.u.reserve(knots);
    for (std::size_t k = 0; k < knots; ++k)
      control.u.push_back(restrict_to(draw(ui.split(k)), ind));
    const Field g = draw(probe_rng.split(i));

    const Field input_state =
        duhamel_evolve(symbol, Field::zeros(grid, Space::Physical), control, horizon);
    const std::complex<double> lhs = pairing(input_state, g);
    std::complex<double> rhs = 0.0;
    for (std::size_t k = 0; k < knots; ++k)
      rhs += integrate_gauss_complex(
          [&](double t) {
            return pairing(control.u[k], restrict_to(dual.apply(horizon - t, g), ind));
          },
          knot_times[k], knot_times[k + 1], panels_per_knot);
    report.worst_pairing_error = std::max(report.worst_pairing_error, relative_gap(lhs, rhs));

    const Field f = draw(adjoint_rng.split(i));
    for (double t : {horizon / 4.0, horizon / 2.0, horizon}) {
      const std::complex<double> forward = pairing(flow.apply(t, f), g);
      const std::complex<double> backward = pairing(f, dual.apply(t, g));
      report.worst_adjoint_error =
          std::max(report.worst_adjoint_error, relative_gap(forward, backward));
    }
  }
  return report;
}

}  // namespace parobs
