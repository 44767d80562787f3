#pragma once

#include <vector>

#include "sphdg/types.hpp"

namespace sphdg {

/// Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 2q-1.
struct Quadrature {
  std::vector<real> x;
  std::vector<real> w;

  int size() const { return static_cast<int>(x.size()); }

  /// Cached rule with q points.
  static const Quadrature& gauss(int q);
};

/// Legendre values P_0..P_k at x into p (length k+1).
void legendre(int k, real x, real* p);

/// Values and d/dx derivatives.
void legendre_deriv(int k, real x, real* p, real* dp);

/// Monomial coefficients of P_m, ascending powers (length m+1).
std::vector<real> legendre_coeffs(int m);

}  // namespace sphdg
