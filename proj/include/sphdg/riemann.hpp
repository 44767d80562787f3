#pragma once

#include <array>

#include "sphdg/eos.hpp"
#include "sphdg/types.hpp"

namespace sphdg {

/// One side of a Riemann problem: primitive values plus the conserved
/// energy and the sound speed.
struct PrimState {
  real rho, u, p, ene, c;
};

PrimState prim_state(const Eos& eos, real rho, real mom, real ene);

struct FluxVector {
  real mass = 0, mom = 0, ene = 0;

  real operator[](int i) const { return i == 0 ? mass : (i == 1 ? mom : ene); }
  FluxVector& operator+=(const FluxVector& o) {
    mass += o.mass;
    mom += o.mom;
    ene += o.ene;
    return *this;
  }
  friend FluxVector operator*(real a, const FluxVector& f) {
    return {a * f.mass, a * f.mom, a * f.ene};
  }
};

/// f(u) = (rho u, rho u^2 + p, (E + p) u).
FluxVector physical_flux(const PrimState& s);

/// HLLC flux with signal speeds S-+ = min/max of u -+ c over both sides.
FluxVector hllc(const PrimState& left, const PrimState& right);

}  // namespace sphdg
