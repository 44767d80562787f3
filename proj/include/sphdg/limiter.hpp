#pragma once

#include <vector>

#include "sphdg/equilibrium.hpp"
#include "sphdg/gravity.hpp"

namespace sphdg {

struct LimiterConfig {
  bool enabled = false;
  real beta = 1.75;   // slope-comparison factor in the minmod arguments
  real tvb_m = 0;     // optional threshold: skip when |slope|*dr <= M dr^2
};

/// (plain average, r^2-weighted average) of cell j.
std::pair<real, real> cell_averages(const DGField& f, int j);

/// Minmod slope limiter in spherical geometry. Troubled cells are detected
/// on the fluctuation u - u^e (component-wise; any component trips the
/// cell); a troubled cell has all three conserved variables rebuilt as the
/// linear polynomial with the limited slope of u itself, holding the
/// r^2-weighted average fixed. Returns the troubled mask.
std::vector<char> detect_and_limit(StateField& u, const EquilibriumDecomposition& decomp,
                                   const LimiterConfig& cfg);

/// Restores the total energy changed by limiting the density: shifts the
/// weighted average of E by int 1/2 (rho_pre phi_pre - rho_post phi_post)
/// r^2 dr / int r^2 dr in every cell (the potential is global, so cells far
/// from any troubled cell shift too).
void energy_correction(DGField& ene, const DGField& rho_pre, const GravityField& phi_pre,
                       const DGField& rho_post, const GravityField& phi_post);

}  // namespace sphdg
