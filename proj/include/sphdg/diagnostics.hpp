#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "sphdg/eos.hpp"
#include "sphdg/gravity.hpp"
#include "sphdg/stepper.hpp"

namespace sphdg {

struct EnergyBreakdown {
  real e_int = 0, e_kin = 0, e_grav = 0, e_tot = 0;
};

/// Internal, kinetic and gravitational (1/2 rho Phi) energies, radially
/// integrated with the r^2 weight; four_pi adds the shell factor.
EnergyBreakdown energies(const StateField& u, const GravityField& gravity, const Eos& eos,
                         bool four_pi);

/// Volume-weighted density average over r < window (at least the first cell).
real central_density(const StateField& u, real window);

/// L1 errors (plain dr weighting) of (rho, rho u, E) against a reference.
std::array<real, 3> l1_error(const StateField& u,
                             const std::function<std::array<real, 3>(real)>& ref);

struct LedgerRow {
  real t, e_int, e_kin, e_grav, e_tot, de_step, de_cum, rho_c;
};

/// Step-wise total-energy account. The conservation residual of a step is
///   dE = E_tot(new) - E_tot(old) + shell * dt * sum_s w_s R^2 f_s^[3](R)
/// plus the matching inner-face term and, when Phi(R) != 0, the mass-flux
/// work term; the stage fluxes come from the StepRecord.
class EnergyLedger {
 public:
  EnergyLedger(bool four_pi, real phi_outer = 0) : four_pi_(four_pi), phi_outer_(phi_outer) {}

  void start(real t, const EnergyBreakdown& e, real rho_c);
  void record_step(real t, const EnergyBreakdown& e, const StepRecord& rec, real rho_c);

  const std::vector<LedgerRow>& rows() const { return rows_; }
  real cumulative() const { return rows_.empty() ? real(0) : rows_.back().de_cum; }
  void write_csv(std::ostream& os) const;

 private:
  bool four_pi_;
  real phi_outer_;
  std::vector<LedgerRow> rows_;
};

}  // namespace sphdg
