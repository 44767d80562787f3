#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>

#include "sphdg/dg_field.hpp"
#include "sphdg/equilibrium.hpp"
#include "sphdg/eos.hpp"
#include "sphdg/gravity.hpp"

namespace sphdg {

enum class BcKind { reflecting, extrapolate, symmetric_copy, dirichlet };

/// A fully specified experiment: EoS, domain and mesh recipe, initial data,
/// boundary policies, optional manufactured source and exact solution,
/// gravity anchors, and run defaults.
struct Scenario {
  std::string name;
  Eos eos = IdealGas{2.0};
  real g_newton = 1;

  real r_min = 0, r_outer = 1;
  int default_cells = 200;
  bool geometric = false;
  // geometric recipes: per-N (dr1, growth) rows, or one fixed pair
  std::map<int, std::pair<real, real>> mesh_table;
  real dr1 = 0, growth = 0;

  std::function<real(real)> rho0, mom0, p0;

  BcKind bc_inner = BcKind::reflecting;
  BcKind bc_outer = BcKind::extrapolate;
  bool has_exact = false;
  std::function<std::array<real, 3>(real r, real t)> exact;  // conserved variables

  bool has_extra_source = false;
  std::function<std::array<real, 3>(real r, real t)> source;

  std::function<GravityAnchors(real t)> anchors = [](real) { return GravityAnchors{}; };

  RecoveryMode recovery = RecoveryMode::recover;
  std::optional<ExplicitEquilibrium> explicit_ud;

  real t_end = 1;
  bool four_pi = false;       // energies carry the 4 pi shell factor
  real central_window = 0;    // 0: innermost cell
  real stop_rhoc = 0;         // stop once the central density reaches this
  bool limiter_default = false;
  real cfl = 0.16;
};

/// Scenario by name with parameter overrides; unknown names or override
/// keys raise std::invalid_argument listing what is available.
Scenario make_scenario(const std::string& name, const std::map<std::string, real>& overrides = {},
                       const std::string& profile_path = {});

Mesh build_mesh(const Scenario& scn, int n_cells);

/// Gauss-Radau projection of the scenario's initial data.
StateField initial_state(const Scenario& scn, const DGSpace& space);

/// Boundary trace seen from outside the domain for a given interior trace.
std::array<real, 3> ghost_state(const Scenario& scn, const std::array<real, 3>& trace,
                                bool outer, real t);

/// Manufactured source triple; zero for scenarios without one.
std::array<real, 3> extra_source(const Scenario& scn, real r, real t);

}  // namespace sphdg
