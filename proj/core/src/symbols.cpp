#include "parobs/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "parobs/errors.hpp"

namespace parobs {

namespace {

double ipow(double base, int exp) {
  double out = 1.0;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

std::complex<double> eval_terms(const std::vector<SymbolTerm>& terms,
                                const std::array<double, kMaxDim>& xi) {
  std::complex<double> acc = 0.0;
  for (const auto& term : terms) {
    double mono = 1.0;
    for (int i = 0; i < kMaxDim; ++i)
      if (term.alpha[i] != 0) mono *= ipow(xi[i], term.alpha[i]);
    acc += term.coeff * mono;
  }
  return acc;
}

// Deterministic unit directions: signs in 1D, the uniform circle in 2D and a
// Fibonacci sphere in 3D.
std::vector<std::array<double, kMaxDim>> sphere_directions(int dim, std::size_t count) {
  std::vector<std::array<double, kMaxDim>> dirs;
  if (dim == 1) {
    dirs.push_back({1.0, 0.0, 0.0});
    dirs.push_back({-1.0, 0.0, 0.0});
    return dirs;
  }
  if (dim == 2) {
    for (std::size_t j = 0; j < count; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) /
                           static_cast<double>(count);
      dirs.push_back({std::cos(angle), std::sin(angle), 0.0});
    }
    return dirs;
  }
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t j = 0; j < count; ++j) {
    const double z = 1.0 - 2.0 * (static_cast<double>(j) + 0.5) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double angle = golden * static_cast<double>(j);
    dirs.push_back({r * std::cos(angle), r * std::sin(angle), z});
  }
  return dirs;
}

struct Deficit {
  double omega = 0.0;   // max over samples of c|xi|^m - Re a(xi), clamped at 0
  double radius = 0.0;  // radius where the maximum was attained (first hit)
};

Deficit worst_deficit(const std::vector<SymbolTerm>& terms, int order, double c,
                      const std::vector<std::array<double, kMaxDim>>& dirs,
                      const std::vector<double>& radii) {
  Deficit out;
  for (double r : radii) {
    const double rm = c * std::pow(r, order);
    for (const auto& dir : dirs) {
      std::array<double, kMaxDim> xi{};
      for (int i = 0; i < kMaxDim; ++i) xi[i] = r * dir[i];
      const double deficit = rm - eval_terms(terms, xi).real();
      if (deficit > out.omega) {
        out.omega = deficit;
        out.radius = r;
      }
    }
  }
  return out;
}

}  // namespace

EllipticSymbol EllipticSymbol::certify(int dim, int order, std::vector<SymbolTerm> terms,
                                       const CertifySampleSpec& spec) {
  if (dim < 1 || dim > kMaxDim) throw DegenerateParams("symbol: dimension must be 1, 2 or 3");
  if (order <= 0 || order % 2 != 0) throw DegenerateParams("symbol: order must be even positive");
  double coeff_scale = 0.0;
  bool has_leading = false;
  for (const auto& term : terms) {
    for (int i = dim; i < kMaxDim; ++i)
      if (term.alpha[i] != 0) throw DegenerateParams("symbol: exponent on an absent axis");
    for (int i = 0; i < kMaxDim; ++i)
      if (term.alpha[i] < 0) throw DegenerateParams("symbol: negative exponent");
    if (term.total_degree() > order)
      throw DegenerateParams("symbol: term degree exceeds the declared order");
    if (term.total_degree() == order && std::abs(term.coeff) > 0.0) has_leading = true;
    coeff_scale = std::max(coeff_scale, std::abs(term.coeff));
  }
  if (!has_leading) throw DegenerateParams("symbol: no nonzero term of top degree");

  const auto dirs = sphere_directions(dim, spec.directions);

  // Leading part on the sphere; positivity there is the ellipticity test.
  std::vector<SymbolTerm> leading;
  for (const auto& term : terms)
    if (term.total_degree() == order) leading.push_back(term);
  double c_lead = std::numeric_limits<double>::infinity();
  for (const auto& dir : dirs) c_lead = std::min(c_lead, eval_terms(leading, dir).real());
  if (!(c_lead > 0.0))
    throw NotElliptic("symbol: Re of the leading part is not positive on the sphere");

  const double r_max = spec.r_max > 0.0 ? spec.r_max : 32.0 * std::max(1.0, coeff_scale);
  std::vector<double> radii(spec.radial_count);
  for (std::size_t i = 0; i < spec.radial_count; ++i)
    radii[i] = r_max * static_cast<double>(i + 1) / static_cast<double>(spec.radial_count);

  // Walk the ladder from c_lead downward; accept the first candidate whose
  // worst sampled deficit is attained strictly inside the sampled range.
  double c_found = 0.0;
  double omega_found = 0.0;
  bool accepted = false;
  for (std::size_t k = 0; k < spec.ladder_steps; ++k) {
    const double c = c_lead * std::ldexp(1.0, -static_cast<int>(k));
    const Deficit deficit = worst_deficit(terms, order, c, dirs, radii);
    if (deficit.omega == 0.0 || deficit.radius <= 0.9 * r_max) {
      c_found = c;
      omega_found = deficit.omega;
      accepted = true;
      break;
    }
  }
  if (!accepted)
    throw NotElliptic("symbol: no ladder candidate admits a finite shift on the samples");

  EllipticSymbol symbol;
  symbol.dim_ = dim;
  symbol.order_ = order;
  symbol.terms_ = std::move(terms);
  symbol.c_ = c_found;
  symbol.omega_ = omega_found;
  return symbol;
}

std::complex<double> EllipticSymbol::eval(const std::array<double, kMaxDim>& xi) const {
  return eval_terms(terms_, xi);
}

EllipticSymbol EllipticSymbol::adjoint() const {
  EllipticSymbol out = *this;
  for (auto& term : out.terms_)
    if (term.total_degree() % 2 != 0) term.coeff = -term.coeff;
  return out;
}

double EllipticSymbol::lambda_star() const {
  const double shift = std::max(omega_, 0.0);
  return std::pow(std::ldexp(1.0, order_ + 4) * shift / c_, 1.0 / static_cast<double>(order_));
}

EllipticSymbol laplacian_power_symbol(int dim, int order) {
  if (order <= 0 || order % 2 != 0)
    throw DegenerateParams("laplacian_power_symbol: order must be even positive");
  const int half = order / 2;
  // Multinomial expansion of (xi_1^2 + ... + xi_d^2)^half.
  std::vector<SymbolTerm> terms;
  std::array<int, kMaxDim> parts{};
  auto recurse = [&](auto&& self, int axis, int remaining, double coeff) -> void {
    if (axis == dim - 1) {
      parts[axis] = remaining;
      SymbolTerm term;
      for (int i = 0; i < dim; ++i) term.alpha[i] = 2 * parts[i];
      term.coeff = coeff;
      terms.push_back(term);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      parts[axis] = k;
      // Running multinomial factor: choose(remaining over k) folded in level by level.
      double binom = 1.0;
      for (int j = 1; j <= k; ++j)
        binom *= static_cast<double>(remaining - k + j) / static_cast<double>(j);
      self(self, axis + 1, remaining - k, coeff * binom);
    }
  };
  recurse(recurse, 0, half, 1.0);
  return EllipticSymbol::certify(dim, order, std::move(terms));
}

}  // namespace parobs
