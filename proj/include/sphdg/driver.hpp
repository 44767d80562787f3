#pragma once

#include <memory>

#include "sphdg/diagnostics.hpp"
#include "sphdg/run_config.hpp"

namespace sphdg {

struct RunReport {
  int steps = 0;
  real t_final = 0;
  double wall_seconds = 0;
  EnergyBreakdown final_energy;
  real de_cum = 0;
  real bounce_time = -1;          // time of the central-density maximum
  real bounce_density = 0;
  real final_central_density = 0;
  bool has_l1 = false;
  std::array<real, 3> l1{};       // against the exact solution, when one exists
};

/// One configured run: owns the scenario, mesh, space, stepper and state.
class Run {
 public:
  explicit Run(const RunConfig& cfg);

  RunReport execute(std::ostream* log = nullptr);

  const DGSpace& space() const { return *space_; }
  const Scenario& scenario() const { return scn_; }
  const StateField& state() const { return state_; }
  const EnergyLedger& ledger() const { return ledger_; }
  GravityField gravity() const;  // of the current state
  real time() const { return t_; }

 private:
  void write_snapshot(int step) const;

  RunConfig cfg_;
  Scenario scn_;
  std::unique_ptr<DGSpace> space_;
  std::unique_ptr<TimeStepper> stepper_;
  StateField state_;
  EnergyLedger ledger_;
  real t_ = 0;
};

RunReport run(const RunConfig& cfg, std::ostream* log = nullptr);

struct SweepResult {
  std::vector<int> cells;
  std::array<std::vector<real>, 3> errors;  // per variable, per mesh
  std::array<std::vector<real>, 3> rates;   // log2 ratios, size cells-1
};

/// L1 errors over a mesh sequence, against the exact solution when the
/// scenario has one, otherwise against a run with ref_cells cells.
SweepResult convergence_sweep(const RunConfig& base, const std::vector<int>& meshes,
                              int ref_cells = 640, std::ostream* log = nullptr);

void print_sweep(const SweepResult& sweep, std::ostream& os);

}  // namespace sphdg
