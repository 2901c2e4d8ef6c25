#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace parobs {

/// Composite trapezoid over [a, b] with `intervals` uniform panels.
double integrate_trapezoid(const std::function<double(double)>& f, double a, double b,
                           std::size_t intervals);

struct RefinedIntegral {
  double value = 0.0;           // estimate at 2*intervals panels
  double refinement_delta = 0;  // |value - coarse| / max(|value|, tiny)
};

/// Trapezoid with one Richardson-style doubling to expose the quadrature error.
RefinedIntegral integrate_trapezoid_refined(const std::function<double(double)>& f, double a,
                                            double b, std::size_t intervals);

/// Composite 8-point Gauss-Legendre; `panels * 8` evaluations.  Spectrally
/// accurate for the analytic-in-time semigroup pairings where the trapezoid
/// rule would need millions of nodes.
double integrate_gauss(const std::function<double(double)>& f, double a, double b,
                       std::size_t panels);

/// integrate_gauss for complex-valued integrands.
std::complex<double> integrate_gauss_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    std::size_t panels);

/// The abscissae used by integrate_gauss, in evaluation order.
std::vector<double> gauss_nodes(double a, double b, std::size_t panels);

}  // namespace parobs
