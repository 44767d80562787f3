#pragma once

#include <variant>

#include "sphdg/types.hpp"

namespace sphdg {

struct IdealGas {
  real gamma;
};

/// Two-regime polytropic EoS with a gamma-law thermal part, stiffening at
/// the nuclear density rho_nuc. Both the polytropic pressure and internal
/// energy density are continuous across rho_nuc.
struct HybridEos {
  real kappa, gamma1, gamma2, gamma_th, rho_nuc;
  real e1, e2, e3, kappa1, kappa2;  // derived

  static HybridEos make(real kappa, real gamma1, real gamma2, real gamma_th, real rho_nuc);

  real p_poly(real rho) const;
  real rhoe_poly(real rho) const;
  real branch_gamma(real rho) const { return rho < rho_nuc ? gamma1 : gamma2; }
};

using Eos = std::variant<IdealGas, HybridEos>;

/// p(rho, e) with e the specific internal energy.
real pressure(const Eos& eos, real rho, real e);

real sound_speed(const Eos& eos, real rho, real e);

/// (p_p, (rho e)_p) of the hybrid EoS.
std::pair<real, real> polytropic_parts(const HybridEos& eos, real rho);

}  // namespace sphdg
