#include "sphdg/riemann.hpp"

#include <algorithm>
#include <cmath>

namespace sphdg {

PrimState prim_state(const Eos& eos, real rho, real mom, real ene) {
  if (!(rho > 0)) throw solver_error("prim_state: non-positive density");
  const real u = mom / rho;
  const real e = (ene - real(0.5) * mom * u) / rho;
  const real p = pressure(eos, rho, e);
  return {rho, u, p, ene, sound_speed(eos, rho, e)};
}

FluxVector physical_flux(const PrimState& s) {
  return {s.rho * s.u, s.rho * s.u * s.u + s.p, (s.ene + s.p) * s.u};
}

namespace {

FluxVector star_flux(const PrimState& s, real sk, real s_star) {
  // intermediate state behind the S_k wave
  const real factor = s.rho * (sk - s.u) / (sk - s_star);
  const real e_star =
      factor * (s.ene / s.rho + (s_star - s.u) * (s_star - s.p / (s.rho * (sk - s.u))));
  const FluxVector f = physical_flux(s);
  return {f.mass + sk * (factor - s.rho),
          f.mom + sk * (factor * s_star - s.rho * s.u),
          f.ene + sk * (e_star - s.ene)};
}

}  // namespace

FluxVector hllc(const PrimState& l, const PrimState& r) {
  const real s_minus = std::min(l.u - l.c, r.u - r.c);
  const real s_plus = std::max(l.u + l.c, r.u + r.c);

  if (0 <= s_minus) return physical_flux(l);
  if (0 >= s_plus) return physical_flux(r);

  const real den = l.rho * (s_minus - l.u) - r.rho * (s_plus - r.u);
  if (std::abs(den) < real(1e-300)) {
    // degenerate contact speed: fall back to HLL
    const FluxVector fl = physical_flux(l), fr = physical_flux(r);
    const real ds = s_plus - s_minus;
    if (std::abs(ds) < real(1e-300)) return fl;
    return {(s_plus * fl.mass - s_minus * fr.mass + s_plus * s_minus * (r.rho - l.rho)) / ds,
            (s_plus * fl.mom - s_minus * fr.mom + s_plus * s_minus * (r.rho * r.u - l.rho * l.u)) / ds,
            (s_plus * fl.ene - s_minus * fr.ene + s_plus * s_minus * (r.ene - l.ene)) / ds};
  }
  const real s_star =
      (r.p - l.p + l.rho * l.u * (s_minus - l.u) - r.rho * r.u * (s_plus - r.u)) / den;

  if (0 <= s_star) return star_flux(l, s_minus, s_star);
  return star_flux(r, s_plus, s_star);
}

}  // namespace sphdg
