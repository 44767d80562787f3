#pragma once

#include <vector>

#include "sphdg/equilibrium.hpp"
#include "sphdg/problems.hpp"
#include "sphdg/riemann.hpp"

namespace sphdg {

struct SchemeOptions {
  bool well_balanced = true;   // modified interface states + momentum correction
  bool tec_energy = true;      // energy-source staging that conserves total energy
  bool limiter_correction = true;
  int threads = 1;
};

/// Flux and source rows of one state evaluation, kept around so Runge-Kutta
/// stages can form their combinations. rows holds the face + volume flux
/// terms and the well-balanced momentum source for every (cell, equation,
/// mode); the gravitational energy source is not included here (its
/// discretization is stage-dependent).
struct StageEval {
  std::vector<FluxVector> flux;   // per face, the interface flux f^*
  std::vector<real> rows;         // [cell][eq][mode]
  std::vector<real> s3_std;       // [cell][mode], -int (rho u) dPhi delta r^2
  std::vector<real> mom_nodes;    // [cell][q] momentum at volume nodes
  GravityField gravity;
  EquilibriumDecomposition decomp;

  real row(int j, int eq, int m, int n_modes) const {
    return rows[static_cast<size_t>((j * 3 + eq)) * n_modes + m];
  }
};

class SpatialOperator {
 public:
  SpatialOperator(const DGSpace* space, const Scenario* scn, SchemeOptions opts);

  /// Full evaluation at (u, t): decomposition, gravity, interface fluxes,
  /// flux rows and momentum/energy sources. A precomputed gravity field for
  /// u.rho may be passed to skip one Poisson solve.
  StageEval evaluate(const StateField& u, real t, const GravityField* gravity_hint = nullptr) const;

  /// Energy rows of the total-energy-conserving source for a stage:
  ///   -[f_c^[1] Phi_bar delta r^2] - int drho_dt Phi_bar delta r^2 dr
  ///   + int mom_c Phi_bar d(delta)/dr r^2 dr
  /// with Phi_bar the average of phi_a and phi_b. Added into rows[cell][mode].
  void energy_tec_rows(const std::vector<FluxVector>& flux_combo,
                       const std::vector<real>& mom_nodes_combo, const DGField& drho_dt,
                       const GravityField& phi_a, const GravityField& phi_b,
                       std::vector<real>& rows) const;

  const DGSpace& space() const { return *space_; }
  const Scenario& scenario() const { return *scn_; }
  const SchemeOptions& options() const { return opts_; }
  const EquilibriumRecovery& recovery() const { return recovery_; }

 private:
  const DGSpace* space_;
  const Scenario* scn_;
  SchemeOptions opts_;
  EquilibriumRecovery recovery_;
};

/// rate = M^{-1} rows for one equation (eq = 0,1,2).
void apply_inverse_mass(const DGSpace& space, const std::vector<real>& rows, int eq,
                        DGField& rate);

}  // namespace sphdg
