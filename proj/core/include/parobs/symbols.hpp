#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "parobs/grid.hpp"

namespace parobs {

/// One monomial a_alpha * xi^alpha of a polynomial symbol.
struct SymbolTerm {
  std::array<int, kMaxDim> alpha{};  // exponents; unused axes stay zero
  std::complex<double> coeff;

  int total_degree() const { return alpha[0] + alpha[1] + alpha[2]; }
};

/// Sampling plan for the ellipticity search.
struct CertifySampleSpec {
  double r_max = 0.0;           // 0: auto, 32 x the largest coefficient magnitude
  std::size_t radial_count = 256;
  std::size_t directions = 64;  // per shell for d >= 2; d = 1 always uses {-1, +1}
  std::size_t ladder_steps = 60;
};

// Polynomial symbol a(xi) = sum_{|alpha| <= m} a_alpha xi^alpha together with
// a certified lower bound Re a(xi) >= c |xi|^m - omega.  The certificate is
// found on a dyadic ladder c = c_lead * 2^-k, where c_lead is the minimum of
// the leading part over the sampled sphere; a candidate is rejected when its
// worst deficit sits at the outer sampling radius, since then no finite shift
// can hold asymptotically.  omega is reported clamped to [0, inf).
class EllipticSymbol {
 public:
  static EllipticSymbol certify(int dim, int order, std::vector<SymbolTerm> terms,
                                const CertifySampleSpec& spec = {});

  std::complex<double> eval(const std::array<double, kMaxDim>& xi) const;

  /// Symbol of the dual semigroup, xi -> a(-xi); the certificate carries over.
  EllipticSymbol adjoint() const;

  int dim() const { return dim_; }
  int order() const { return order_; }
  double ellipticity_c() const { return c_; }
  double shift_omega() const { return omega_; }
  const std::vector<SymbolTerm>& terms() const { return terms_; }

  /// Activation threshold (2^{m+4} max{omega, 0} / c)^{1/m} of the
  /// general-symbol dissipation estimate.
  double lambda_star() const;

 private:
  EllipticSymbol() = default;

  int dim_ = 0;
  int order_ = 0;
  std::vector<SymbolTerm> terms_;
  double c_ = 0.0;
  double omega_ = 0.0;
};

/// The symbol |xi|^m (m even), expanded into monomials.
EllipticSymbol laplacian_power_symbol(int dim, int order);

}  // namespace parobs
