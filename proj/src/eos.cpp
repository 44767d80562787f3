#include "sphdg/eos.hpp"

#include <cmath>

namespace sphdg {

HybridEos HybridEos::make(real kappa, real gamma1, real gamma2, real gamma_th, real rho_nuc) {
  HybridEos e;
  e.kappa = kappa;
  e.gamma1 = gamma1;
  e.gamma2 = gamma2;
  e.gamma_th = gamma_th;
  e.rho_nuc = rho_nuc;
  e.e1 = kappa / (gamma1 - 1);
  e.kappa1 = kappa;
  e.e2 = kappa / (gamma2 - 1) * std::pow(rho_nuc, gamma1 - gamma2);
  e.kappa2 = (gamma2 - 1) * e.e2;
  e.e3 = (gamma2 - gamma1) / (gamma2 - 1) * e.e1 * std::pow(rho_nuc, gamma1 - 1);
  return e;
}

real HybridEos::p_poly(real rho) const {
  return rho < rho_nuc ? kappa1 * std::pow(rho, gamma1) : kappa2 * std::pow(rho, gamma2);
}

real HybridEos::rhoe_poly(real rho) const {
  return rho < rho_nuc ? e1 * std::pow(rho, gamma1) : e2 * std::pow(rho, gamma2) + e3 * rho;
}

std::pair<real, real> polytropic_parts(const HybridEos& eos, real rho) {
  return {eos.p_poly(rho), eos.rhoe_poly(rho)};
}

real pressure(const Eos& eos, real rho, real e) {
  if (!(rho > 0)) throw solver_error("pressure: non-positive density");
  if (const auto* ig = std::get_if<IdealGas>(&eos)) return (ig->gamma - 1) * rho * e;
  const auto& h = std::get<HybridEos>(eos);
  const real rhoe_th = rho * e - h.rhoe_poly(rho);
  return h.p_poly(rho) + (h.gamma_th - 1) * rhoe_th;
}

real sound_speed(const Eos& eos, real rho, real e) {
  if (!(rho > 0)) throw solver_error("sound_speed: non-positive density");
  real c2;
  if (const auto* ig = std::get_if<IdealGas>(&eos)) {
    c2 = ig->gamma * (ig->gamma - 1) * e;
  } else {
    // composite of the active polytropic branch and the thermal part
    const auto& h = std::get<HybridEos>(eos);
    const real p_p = h.p_poly(rho);
    const real p_th = (h.gamma_th - 1) * (rho * e - h.rhoe_poly(rho));
    c2 = (h.branch_gamma(rho) * p_p + h.gamma_th * p_th) / rho;
  }
  if (!(c2 > 0) || !std::isfinite(c2))
    throw solver_error("sound_speed: non-positive squared speed");
  return std::sqrt(c2);
}

}  // namespace sphdg
