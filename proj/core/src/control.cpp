#include "parobs/control.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "parobs/errors.hpp"
#include "parobs/fft.hpp"

namespace parobs {

namespace {

// phi(z) = (1 - e^{-z}) / z, the averaged interval multiplier.  The direct
// quotient loses all digits near z = 0; below |z| = 1/4 the alternating
// series sum (-z)^n / (n+1)! converges past double precision in 12 terms.
std::complex<double> phi(std::complex<double> z) {
  if (std::abs(z) < 0.25) {
    std::complex<double> term = 1.0;
    std::complex<double> sum = 1.0;
    for (int n = 1; n <= 12; ++n) {
      term *= -z / static_cast<double>(n + 1);
      sum += term;
    }
    return sum;
  }
  return (1.0 - std::exp(-z)) / z;
}

void check_knots(const ControlSolution& control) {
  if (control.u.empty() && control.knots.empty()) return;
  if (control.u.size() + 1 != control.knots.size())
    throw KnotMismatch("control: knot count must be one more than the field count");
  if (control.knots.front() != 0.0)
    throw KnotMismatch("control: first knot must be 0");
  for (std::size_t k = 1; k < control.knots.size(); ++k)
    if (!(control.knots[k] > control.knots[k - 1]))
      throw KnotMismatch("control: knots must be strictly increasing");
}

}  // namespace

Field duhamel_evolve(const EllipticSymbol& symbol, const Field& x0,
                     const ControlSolution& control, double t) {
  check_space(x0, Space::Physical, "duhamel_evolve");
  check_knots(control);
  if (t < 0.0) throw NegativeTime("duhamel_evolve: negative time");
  const double horizon = control.knots.empty() ? t : control.knots.back();
  if (t > horizon * (1.0 + 1e-12))
    throw KnotMismatch("duhamel_evolve: time beyond the final knot");

  const Grid& grid = x0.grid;
  SemigroupOperator flow(symbol, grid);
  const auto& a = flow.symbol_values();

  Field acc = dft(x0);
  for (std::size_t i = 0; i < acc.values.size(); ++i) acc.values[i] *= std::exp(-t * a[i]);

  for (std::size_t k = 0; k < control.u.size(); ++k) {
    const double start = control.knots[k];
    if (start >= t) break;
    const double end = std::min(control.knots[k + 1], t);
    const double delta = end - start;
    check_same_grid(x0, control.u[k], "duhamel_evolve");
    check_space(control.u[k], Space::Physical, "duhamel_evolve");
    Field uhat = dft(control.u[k]);
    for (std::size_t i = 0; i < uhat.values.size(); ++i) {
      const std::complex<double> z = delta * a[i];
      acc.values[i] += std::exp(-(t - end) * a[i]) * delta * phi(z) * uhat.values[i];
    }
  }
  return idft(acc);
}

ControlSolution synthesize_control_hum(const EllipticSymbol& symbol, const ThickSet& set,
                                       const Field& x0, double horizon,
                                       const HumOptions& options) {
  const Grid& grid = set.grid();
  check_space(x0, Space::Physical, "synthesize_control_hum");
  check_same_grid(x0, set.indicator(), "synthesize_control_hum");
  if (!(horizon > 0.0)) throw DegenerateParams("hum: horizon must be positive");
  if (options.knots < 16) throw DegenerateParams("hum: need at least 16 knots");
  if (!(options.tolerance > 0.0) || options.penalty < 0.0)
    throw DegenerateParams("hum: tolerance must be positive and penalty nonnegative");

  const std::size_t knot_count = options.knots;
  const double delta = horizon / static_cast<double>(knot_count);

  ControlSolution out;
  out.knots.resize(knot_count + 1);
  for (std::size_t k = 0; k <= knot_count; ++k)
    out.knots[k] = horizon * static_cast<double>(k) / static_cast<double>(knot_count);

  const double x0_norm = lp_norm(x0, 2.0);
  if (x0_norm == 0.0) {
    out.u.assign(knot_count, Field::zeros(grid, Space::Physical));
    return out;
  }

  SemigroupOperator flow(symbol, grid);
  const auto& a = flow.symbol_values();

  // Interval multiplier m_k = e^{-(T - t_{k+1}) a} * delta * phi(delta a):
  // feeding it a field supported on E gives that interval's exact
  // contribution to x(T).  The Gramian below is (1/delta) sum_k m_k 1_E
  // conj(m_k), which is Hermitian positive semidefinite by construction.
  std::vector<std::vector<std::complex<double>>> mult(knot_count);
  for (std::size_t k = 0; k < knot_count; ++k) {
    mult[k].resize(grid.size());
    const double tail = horizon - out.knots[k + 1];
    for (std::size_t i = 0; i < grid.size(); ++i)
      mult[k][i] = std::exp(-tail * a[i]) * delta * phi(delta * a[i]);
  }

  const Field& ind = set.indicator();
  const auto gramian = [&](const Field& psi) {
    Field psi_hat = dft(psi);
    Field acc = Field::zeros(grid, Space::Frequency);
    Field back = Field::zeros(grid, Space::Frequency);
    for (std::size_t k = 0; k < knot_count; ++k) {
      for (std::size_t i = 0; i < grid.size(); ++i)
        back.values[i] = std::conj(mult[k][i]) * psi_hat.values[i];
      Field masked = dft(restrict_to(idft(back), ind));
      for (std::size_t i = 0; i < grid.size(); ++i)
        acc.values[i] += mult[k][i] * masked.values[i];
    }
    Field result = idft(acc);
    const std::complex<double> shift = 2.0 * options.penalty;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      result.values[i] /= delta;
      result.values[i] += shift * psi.values[i];
    }
    return result;
  };

  // Conjugate gradient on (Gram + 2 eps) psi = S_T x0.  With eps = 0 the
  // residual b - Gram psi IS the terminal state of the controlled system, so
  // the stopping test directly bounds ||x(T)||.
  const Field b = flow.apply(horizon, x0);
  const std::size_t cap =
      options.max_iterations ? options.max_iterations : 10 * knot_count;
  Field psi = Field::zeros(grid, Space::Physical);
  Field residual = b;
  Field direction = residual;
  double rs = inner(residual, residual).real();
  const double target = options.tolerance * x0_norm;
  std::size_t iter = 0;
  while (std::sqrt(rs) > target) {
    if (iter >= cap)
      throw NoConvergence("hum: conjugate gradient hit its iteration cap", iter,
                          std::sqrt(rs));
    const Field applied = gramian(direction);
    const double curvature = inner(applied, direction).real();
    if (!(curvature > 0.0))
      throw NoConvergence("hum: conjugate gradient lost positive curvature", iter,
                          std::sqrt(rs));
    const double alpha = rs / curvature;
    axpy(alpha, direction, psi);
    axpy(-alpha, applied, residual);
    const double rs_next = inner(residual, residual).real();
    Field next_direction = residual;
    axpy(rs_next / rs, direction, next_direction);
    direction = std::move(next_direction);
    rs = rs_next;
    ++iter;
  }

  out.iterations = iter;
  out.dual_residual = std::sqrt(rs);

  Field psi_hat = dft(psi);
  Field back = Field::zeros(grid, Space::Frequency);
  out.u.reserve(knot_count);
  for (std::size_t k = 0; k < knot_count; ++k) {
    for (std::size_t i = 0; i < grid.size(); ++i)
      back.values[i] = std::conj(mult[k][i]) * psi_hat.values[i];
    Field uk = restrict_to(idft(back), ind);
    scale(uk, -1.0 / delta);
    out.u.push_back(std::move(uk));
  }

  out.cost = measure_control_cost(out, out.p, out.r);
  out.terminal_residual = lp_norm(duhamel_evolve(symbol, x0, out, horizon), 2.0);
  return out;
}

double measure_control_cost(const ControlSolution& control, double p, double r) {
  check_knots(control);
  if (control.u.empty()) return 0.0;
  if (std::isinf(r)) {
    double worst = 0.0;
    for (const auto& uk : control.u) worst = std::max(worst, lp_norm(uk, p));
    return worst;
  }
  if (!(r >= 1.0)) throw DegenerateParams("control cost: r must lie in [1, inf]");
  double acc = 0.0;
  for (std::size_t k = 0; k < control.u.size(); ++k) {
    const double width = control.knots[k + 1] - control.knots[k];
    acc += width * std::pow(lp_norm(control.u[k], p), r);
  }
  return std::pow(acc, 1.0 / r);
}

}  // namespace parobs
