#include "parobs/quadrature.hpp"

#include <cmath>

#include "parobs/errors.hpp"

namespace parobs {

namespace {

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr double kGaussNode[8] = {
    -0.9602898564975362, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975362};
constexpr double kGaussWeight[8] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

}  // namespace

double integrate_trapezoid(const std::function<double(double)>& f, double a, double b,
                           std::size_t intervals) {
  if (intervals == 0) throw DegenerateParams("integrate_trapezoid: zero intervals");
  const double h = (b - a) / static_cast<double>(intervals);
  double acc = 0.5 * (f(a) + f(b));
  for (std::size_t i = 1; i < intervals; ++i) acc += f(a + h * static_cast<double>(i));
  return acc * h;
}

RefinedIntegral integrate_trapezoid_refined(const std::function<double(double)>& f, double a,
                                            double b, std::size_t intervals) {
  const double coarse = integrate_trapezoid(f, a, b, intervals);
  const double fine = integrate_trapezoid(f, a, b, 2 * intervals);
  RefinedIntegral out;
  out.value = fine;
  out.refinement_delta = std::abs(fine - coarse) / std::max(std::abs(fine), 1e-300);
  return out;
}

double integrate_gauss(const std::function<double(double)>& f, double a, double b,
                       std::size_t panels) {
  if (panels == 0) throw DegenerateParams("integrate_gauss: zero panels");
  const double w = (b - a) / static_cast<double>(panels);
  double acc = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + w * (static_cast<double>(p) + 0.5);
    for (int j = 0; j < 8; ++j) acc += kGaussWeight[j] * f(mid + 0.5 * w * kGaussNode[j]);
  }
  return acc * 0.5 * w;
}

std::complex<double> integrate_gauss_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    std::size_t panels) {
  if (panels == 0) throw DegenerateParams("integrate_gauss: zero panels");
  const double w = (b - a) / static_cast<double>(panels);
  std::complex<double> acc = 0.0;
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + w * (static_cast<double>(p) + 0.5);
    for (int j = 0; j < 8; ++j) acc += kGaussWeight[j] * f(mid + 0.5 * w * kGaussNode[j]);
  }
  return acc * (0.5 * w);
}

std::vector<double> gauss_nodes(double a, double b, std::size_t panels) {
  std::vector<double> nodes;
  nodes.reserve(panels * 8);
  const double w = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + w * (static_cast<double>(p) + 0.5);
    for (int j = 0; j < 8; ++j) nodes.push_back(mid + 0.5 * w * kGaussNode[j]);
  }
  return nodes;
}

}  // namespace parobs
