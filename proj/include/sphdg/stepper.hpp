#pragma once

#include <array>

#include "sphdg/limiter.hpp"
#include "sphdg/spatial.hpp"

namespace sphdg {

/// Bookkeeping of one full time step, enough for the energy ledger to form
/// the boundary-corrected conservation residual.
struct StepRecord {
  real dt = 0;
  int n_stages = 1;
  std::array<real, 3> weights{1, 0, 0};        // final-stage combination
  std::array<real, 3> outer_ene_flux_r2{};     // R^2 f^[3](R) per evaluation
  std::array<real, 3> outer_mass_flux_r2{};    // R^2 f^[1](R) per evaluation
  std::array<real, 3> inner_ene_flux_r2{};     // r_min^2 f^[3](r_min)
  int troubled_cells = 0;
};

/// Explicit time integration: forward Euler, two-stage RK2 or three-stage
/// SSP-RK3, with the stage-wise energy-source discretization that makes the
/// discrete total energy telescope. Every stage updates density and
/// momentum first, solves the new potential, closes the energy equation
/// with the density window (rho_new - rho^n)/h and the averaged potential,
/// then applies the limiter (with its energy correction when enabled).
class TimeStepper {
 public:
  TimeStepper(const DGSpace* space, const Scenario* scn, SchemeOptions opts,
              LimiterConfig limiter, int rk_order);

  real cfl_dt(const StateField& u, real cfl) const;

  StepRecord step(StateField& u, real t, real dt) const;

  const SpatialOperator& op() const { return op_; }

 private:
  struct StageOut {
    StateField u;
    GravityField gravity;  // of the (possibly limited) stage state
    int troubled = 0;
  };
  StageOut advance(const StateField& un, const std::vector<StageEval>& evals,
                   const std::vector<real>& weights, real h, real t_new) const;
  void check_state(const StateField& u, real t) const;

  SpatialOperator op_;
  LimiterConfig limiter_;
  int rk_order_;
};

}  // namespace sphdg
