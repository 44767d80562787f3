#pragma once

#include <functional>
#include <optional>

#include "sphdg/dg_field.hpp"
#include "sphdg/eos.hpp"
#include "sphdg/gravity.hpp"
#include "sphdg/lane_emden.hpp"

namespace sphdg {

enum class RecoveryMode {
  recover,           // rebuild the polytrope from the inner traces
  explicit_profile,  // caller-supplied global steady state (no recovery)
  disabled           // no equilibrium handling (plain scheme)
};

/// Caller-supplied steady state for domains that exclude r = 0, where the
/// centre-value recovery has no anchor. m_inner is r_min^2 dPhi^e/dr at the
/// inner face, consistent with hydrostatic balance of the profile.
struct ExplicitEquilibrium {
  std::function<real(real)> rho;
  std::function<real(real)> pressure;
  std::function<real(real)> energy;
  real m_inner = 0;
};

/// Snapshot of the equilibrium/fluctuation split for one stage state:
/// the target equilibrium u^d (continuous, zeroed per cell by the validity
/// mask), its projection u^e into the DG space, and the gravity of rho^e.
/// The fluctuation u^f = u - u^e is formed by callers on demand.
class EquilibriumDecomposition {
 public:
  bool active() const { return active_; }
  bool valid(int j) const { return active_ && mask_[static_cast<size_t>(j)]; }

  // u^d components; zero in masked cells
  real rho_d(int j, real r) const;
  real ene_d(int j, real r) const;
  /// EoS pressure of the equilibrium state at r (zero in masked cells).
  real p_d(int j, real r) const;

  const StateField& ue() const { return ue_; }
  const GravityField& gravity_e() const { return grav_e_; }

  real kappa() const { return kappa_; }
  real alpha() const { return alpha_; }
  real gamma() const { return gamma_; }

  friend class EquilibriumRecovery;

 private:
  real rho_d_any(real r) const;
  real ene_d_any(real r) const;

  bool active_ = false;
  bool explicit_ = false;
  std::vector<char> mask_;
  StateField ue_;
  GravityField grav_e_;
  const Eos* eos_ = nullptr;
  // recovered-polytrope parameters
  const PolytropeProfile* profile_ = nullptr;
  real rho0_ = 0, kappa_ = 0, alpha_ = 1, gamma_ = 0, n_ = 0, ene_scale_ = 0;
  const ExplicitEquilibrium* ud_ = nullptr;
};

class EquilibriumRecovery {
 public:
  EquilibriumRecovery(RecoveryMode mode, const Eos& eos, real g_newton,
                      std::optional<ExplicitEquilibrium> explicit_ud = std::nullopt);

  RecoveryMode mode() const { return mode_; }

  /// Rebuilds the decomposition for the given state. With mode recover the
  /// centre density/pressure are read from the inner traces of cell 0; a
  /// non-positive trace disables the decomposition for this call.
  EquilibriumDecomposition decompose(const StateField& u) const;

 private:
  RecoveryMode mode_;
  Eos eos_;
  real g_newton_;
  std::optional<ExplicitEquilibrium> ud_;
  ProfileCache profiles_;
};

/// Modified interface values u* = u^d(face) + u^f(face) used by the
/// well-balanced flux; side picks the cell supplying the one-sided trace.
std::array<real, 3> modified_trace(const EquilibriumDecomposition& decomp,
                                   const StateField& u, int cell, bool outer_face);

}  // namespace sphdg
