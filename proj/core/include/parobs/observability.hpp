#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "parobs/semigroup.hpp"
#include "parobs/thickness.hpp"

namespace parobs {

// Hypotheses of the abstract observability chain: an uncertainty principle
//   ||P_lambda x||  <=  d0 e^{d1 lambda^{gamma1}} ||C P_lambda x||,
// a dissipation estimate
//   ||(I - P_lambda) S_t||  <=  d2 e^{-d3 lambda^{gamma2} t^{gamma3}}
// for lambda > lambda_star, and the growth envelope ||S_t|| <= M e^{omega t}.
struct ObservabilityInputs {
  double d0 = 1.0;
  double d1 = 1.0;
  double d2 = 1.0;
  double d3 = 1.0;
  double gamma1 = 1.0;
  double gamma2 = 2.0;
  double gamma3 = 1.0;
  double lambda_star = 0.0;
  double M = 1.0;
  double omega = 0.0;
  double obs_norm = 1.0;  // operator norm of the observation map C
  double horizon = 1.0;   // T
  double r = std::numeric_limits<double>::infinity();  // time exponent in [1, inf]
};

struct ObservabilityConstants {
  ObservabilityInputs inputs;
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double log_c1 = 0.0;
  double log_cobs = 0.0;  // always evaluated; finite whenever the inputs are
  double cobs = 0.0;      // e^{log_cobs}; +inf when past double range
};

// Final-state observability constant
//   C_obs = (C1 / T^{1/r}) exp( C2 / T^{g1 g3 / (g2 - g1)} + C3 T ),
// T^{1/r} = 1 for r = inf, with C1, C2, C3 assembled from the inputs.  The
// derived constants are also kept in log form: C_obs itself overflows a
// double already at desk scales (C2 / T easily exceeds 1e6).
// Throws ExponentOrder when gamma1 >= gamma2, DegenerateParams on the rest.
ObservabilityConstants compute_abstract_cobs(const ObservabilityInputs& in);

// The chain specialized to a certified symbol of order m observed on a thick
// set: exponents (1, m, 1), uncertainty constants from the thickness data
//   d0 = e^{K d ln(K^d / rho)},   d1 = 2 |L|_1 ln(K^d / rho)
// at sharpness K, d3 = 2^{-m-4} c, lambda_star from the certificate, (M,
// omega) from the growth envelope, ||C|| = 1 for the restriction map.  d2 is
// the measured dissipation prefactor doubled as a safety envelope and
// floored at 1.
ObservabilityConstants compute_parabolic_cobs(const EllipticSymbol& symbol, const ThickSet& set,
                                              const GrowthBound& growth, double horizon,
                                              double r, double dissipation_prefactor,
                                              double kovrijkine_k = 10.0);

struct ObservabilityRatioReport {
  double c_emp = 0.0;             // worst ratio over admitted probes
  double worst_refinement = 0.0;  // largest relative shift under node doubling
  std::size_t excluded_probes = 0;
};

// Empirical counterpart of the observability inequality: max over probes of
//   ||S_T f||_p / ( int_0^T ||(S_t f)|_E||_p^r dt )^{1/r},
// the time integral by composite trapezoid at time_nodes intervals, doubled
// once to expose the quadrature error; r = inf takes the max over the nodes
// instead.  Probes invisible on E over the whole window are excluded and
// counted; ZeroDenominator when that leaves none.
ObservabilityRatioReport measure_observability_ratio(const SemigroupOperator& flow,
                                                     const ThickSet& set, double horizon,
                                                     double p, double r,
                                                     const std::vector<Field>& probes,
                                                     std::size_t time_nodes = 64);

struct IterationSample {
  double t = 0.0;
  double log_lhs = 0.0;
  double log_rhs = 0.0;
  double slack = 0.0;  // 1 - lhs/rhs; nonnegative when the bound holds
};

struct IterationReport {
  double worst_slack = 0.0;
  double worst_t = 0.0;
  std::size_t worst_probe = 0;
  bool pass = false;
  std::vector<IterationSample> samples;  // worst probe per grid time
};

// One-step inequality the observability constant is iterated from: with
// F(t) = ||S_t f||_2 and G(t) = ||(S_t f)|_E||_2,
//   F(t) <= (2 M e^{w+ T} d0 e^{d1 l^{g1}} / t) int_{t/2}^t G(s) ds
//         + d2 M^2 e^{5 w+ T / 4} e^{d1 l^{g1}} e^{-d3 l^{g2} (t/4)^{g3}}
//           (d0 ||C|| + 1) F(t/4)
// checked at every grid time for every probe.  Sides are compared in log
// space (the right side overflows at moderate lambda); slack is 1 - lhs/rhs.
// Throws LambdaBelowThreshold at or below lambda_star.
IterationReport verify_iteration_inequality(const SemigroupOperator& flow, const ThickSet& set,
                                            const ObservabilityInputs& in, double lambda,
                                            const std::vector<double>& t_grid,
                                            const std::vector<Field>& probes,
                                            std::size_t quad_panels = 4);

struct DualPairingReport {
  double worst_pairing_error = 0.0;  // input-map identity, relative
  double worst_adjoint_error = 0.0;  // <S_t f, g> vs <f, S'_t g>, relative
  std::size_t pairs = 0;
};

// Pairing identity behind the dual-norm computation: for piecewise-constant
// u supported on E and the bilinear pairing <.,.>,
//   < int_0^T S_{T-t} u(t) dt , g >  =  int_0^T < u(t), (S'_{T-t} g)|_E > dt
// with S' generated by the reflected symbol.  The left side is evaluated
// exactly per knot interval, the right side by composite Gauss-Legendre with
// panels_per_knot * 8 nodes per interval.  Each reported error is relative
// to the larger side's magnitude.  A positive band_limit draws u and g with
// spectra in [-band_limit, band_limit]^d.
DualPairingReport verify_dual_norm_identity(const EllipticSymbol& symbol, const ThickSet& set,
                                            double horizon, std::size_t knots,
                                            const SplitRng& rng, std::size_t pairs,
                                            std::size_t panels_per_knot = 32,
                                            double band_limit = 0.0);

}  // namespace parobs
