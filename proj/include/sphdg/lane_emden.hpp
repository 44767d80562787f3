#pragma once

#include <limits>
#include <memory>
#include <vector>

#include "sphdg/types.hpp"

namespace sphdg {

/// Tabulated Lane-Emden solution theta(xi) for polytropic index n,
/// or the closed form for n in {0, 1, 5}. Queries beyond the first
/// zero of theta return (0, 0).
class PolytropeProfile {
 public:
  real index() const { return n_; }
  real xi_surface() const { return xi_surface_; }
  bool analytic() const { return analytic_; }

  /// theta and d theta / d xi; cubic Hermite between grid nodes.
  std::pair<real, real> eval(real xi) const;
  real theta(real xi) const { return eval(xi).first; }

  /// Two-column (xi, theta) dump for debugging.
  void dump(std::ostream& os) const;

  friend PolytropeProfile solve_lane_emden(real n, real h, real xi_max);
  friend PolytropeProfile analytic_profile(real n);

 private:
  real n_ = 0;
  bool analytic_ = false;
  real h_ = 0;
  real xi_surface_ = std::numeric_limits<real>::infinity();
  std::vector<real> theta_, dtheta_;  // uniform grid xi_i = i*h
};

/// Closed-form theta_n for n = 0, 1, 5; throws for other n.
real analytic_theta(real n, real xi);

/// Profile backed by the closed form (no table).
PolytropeProfile analytic_profile(real n);

/// Integrates the Lane-Emden system (theta' = -phi/xi^2, phi' = theta^n xi^2)
/// from xi = 0 with the Fehlberg fifth-order tableau, step h, stopping at
/// xi_max or at the surface theta <= 0 (located by linear interpolation).
PolytropeProfile solve_lane_emden(real n, real h = real(1e-4), real xi_max = 50);

/// Per-run cache keyed by n; uses the closed form when n is 0, 1 or 5.
class ProfileCache {
 public:
  const PolytropeProfile& get(real n) const;

 private:
  mutable std::vector<std::unique_ptr<PolytropeProfile>> profiles_;
};

}  // namespace sphdg
