#pragma once

#include <cstddef>
#include <vector>

#include "parobs/semigroup.hpp"
#include "parobs/thickness.hpp"

namespace parobs {

// A control that is piecewise constant in time: on the knot interval
// [t_k, t_{k+1}) it equals the stored field u[k], supported on the control
// set.  Costs and residuals are recorded by the synthesizer; the invariant
// checked downstream is that recomputing the cost from the stored fields
// reproduces the recorded value.
struct ControlSolution {
  std::vector<double> knots;  // t_0 < ... < t_K with t_0 = 0
  std::vector<Field> u;       // one field per interval; u.size() + 1 == knots.size()
  double p = 2.0;
  double r = 2.0;
  double cost = 0.0;               // ||u||_{L_r((0,T); L_p)}
  double terminal_residual = 0.0;  // ||x(T)||_2 of the controlled trajectory
  std::size_t iterations = 0;      // conjugate gradient iterations spent
  double dual_residual = 0.0;      // final linear-system residual, 2-norm
};

// Mild solution x(t) = S_t x0 + int_0^t S_{t-s} u(s) ds.  Because u is
// constant on each interval, the integral over an interval of length delta
// contributes e^{-(t - t_end) a} * delta * phi(delta a) applied to the
// forcing spectrum, with phi(z) = (1 - e^{-z}) / z evaluated by a series
// below |z| = 1/4 to avoid the cancellation at z = 0.  There is no stepping
// error; evaluation is exact per interval.
Field duhamel_evolve(const EllipticSymbol& symbol, const Field& x0,
                     const ControlSolution& control, double t);

struct HumOptions {
  std::size_t knots = 64;
  double tolerance = 1e-6;         // residual target, relative to ||x0||_2
  double penalty = 0.0;            // Tikhonov weight added to the Gramian
  std::size_t max_iterations = 0;  // 0 means 10 * knots
};

// Minimal-energy control steering x0 (approximately) to zero at the horizon,
// computed by the dual method in the p = r = 2 geometry: conjugate gradient
// solves (Gram + 2 penalty) psi = S_T x0 for the terminal adjoint state, and
// the control is the restricted adjoint trajectory of -psi, averaged over
// each knot interval so that the discrete Gramian is exactly the input map
// composed with its adjoint.  With zero penalty the terminal state equals
// the linear-system residual, so convergence certifies ||x(T)||.
// Throws NoConvergence (with diagnostics) when the iteration cap is hit.
ControlSolution synthesize_control_hum(const EllipticSymbol& symbol, const ThickSet& set,
                                       const Field& x0, double horizon,
                                       const HumOptions& options = {});

// L_r-in-time norm of the L_p-in-space knot values; exact for piecewise
// constant controls, max over knots when r is infinite.
double measure_control_cost(const ControlSolution& control, double p, double r);

}  // namespace parobs
