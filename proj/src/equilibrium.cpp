#include "sphdg/equilibrium.hpp"

#include <cmath>

namespace sphdg {

real EquilibriumDecomposition::rho_d_any(real r) const {
  if (explicit_) return ud_->rho(r);
  const real theta = profile_->eval(r / alpha_).first;
  return theta > 0 ? rho0_ * std::pow(theta, n_) : real(0);
}

real EquilibriumDecomposition::ene_d_any(real r) const {
  if (explicit_) return ud_->energy(r);
  const real theta = profile_->eval(r / alpha_).first;
  return theta > 0 ? ene_scale_ * std::pow(theta, n_ + 1) : real(0);
}

real EquilibriumDecomposition::rho_d(int j, real r) const {
  return valid(j) ? rho_d_any(r) : real(0);
}

real EquilibriumDecomposition::ene_d(int j, real r) const {
  return valid(j) ? ene_d_any(r) : real(0);
}

real EquilibriumDecomposition::p_d(int j, real r) const {
  if (!valid(j)) return 0;
  if (explicit_) return ud_->pressure(r);
  const real rho = rho_d_any(r);
  if (!(rho > 0)) return 0;
  return pressure(*eos_, rho, ene_d_any(r) / rho);
}

EquilibriumRecovery::EquilibriumRecovery(RecoveryMode mode, const Eos& eos, real g_newton,
                                         std::optional<ExplicitEquilibrium> explicit_ud)
    : mode_(mode), eos_(eos), g_newton_(g_newton), ud_(std::move(explicit_ud)) {
  if (mode_ == RecoveryMode::explicit_profile && !ud_)
    throw std::invalid_argument("EquilibriumRecovery: explicit mode needs a profile");
}

EquilibriumDecomposition EquilibriumRecovery::decompose(const StateField& u) const {
  const DGSpace& space = u.space();
  const int n = space.n_cells();

  EquilibriumDecomposition d;
  d.eos_ = &eos_;
  if (mode_ == RecoveryMode::disabled) return d;

  d.mask_.assign(static_cast<size_t>(n), 1);
  d.ue_ = StateField(&space);

  if (mode_ == RecoveryMode::explicit_profile) {
    d.active_ = true;
    d.explicit_ = true;
    d.ud_ = &*ud_;
  } else {
    // centre values from the inner traces of cell 0
    const real rho0 = u.rho.trace_inner(0);
    const real mom0 = u.mom.trace_inner(0);
    const real ene0 = u.ene.trace_inner(0);
    if (!(rho0 > 0)) return d;
    const real e0 = (ene0 - real(0.5) * mom0 * mom0 / rho0) / rho0;
    real p0;
    try {
      p0 = pressure(eos_, rho0, e0);
    } catch (const solver_error&) {
      return d;
    }
    if (!(p0 > 0)) return d;

    real gamma;
    if (const auto* ig = std::get_if<IdealGas>(&eos_))
      gamma = ig->gamma;
    else
      gamma = std::get<HybridEos>(eos_).branch_gamma(rho0);

    d.active_ = true;
    d.gamma_ = gamma;
    d.rho0_ = rho0;
    d.n_ = real(1) / (gamma - 1);
    d.kappa_ = p0 / std::pow(rho0, gamma);
    d.alpha_ = std::sqrt(gamma / (gamma - 1) * d.kappa_ * std::pow(rho0, gamma - 2) /
                         (4 * pi * g_newton_));
    d.ene_scale_ = d.kappa_ / (gamma - 1) * std::pow(rho0, gamma);
    d.profile_ = &profiles_.get(d.n_);

    // validity mask: theta must stay inside its admissible range over the
    // cell, and the recovered state must not overshoot the local solution
    const Mesh& mesh = space.mesh();
    for (int j = 0; j < n; ++j) {
      if (!(mesh.face(j + 1) / d.alpha_ < d.profile_->xi_surface())) {
        d.mask_[static_cast<size_t>(j)] = 0;
        continue;
      }
      const real rf = mesh.face(j);
      const real rho_d = d.rho_d_any(rf);
      const real rho_trace = u.rho.trace_inner(j);
      const real mom_trace = u.mom.trace_inner(j);
      const real ene_trace = u.ene.trace_inner(j);
      if (!(rho_trace > 0) || rho_d > 2 * rho_trace) {
        d.mask_[static_cast<size_t>(j)] = 0;
        continue;
      }
      real p_trace;
      try {
        p_trace = pressure(eos_, rho_trace,
                           (ene_trace - real(0.5) * mom_trace * mom_trace / rho_trace) / rho_trace);
      } catch (const solver_error&) {
        d.mask_[static_cast<size_t>(j)] = 0;
        continue;
      }
      const real ed = d.ene_d_any(rf);
      const real pd = rho_d > 0 ? pressure(eos_, rho_d, ed / rho_d) : real(0);
      if (pd > 2 * p_trace) d.mask_[static_cast<size_t>(j)] = 0;
    }
  }

  // u^e = P u^d cell by cell, zero where masked; momentum projects to zero
  for (int j = 0; j < n; ++j) {
    if (!d.mask_[static_cast<size_t>(j)]) continue;
    project_cell(space, j, [&](real r) { return d.rho_d_any(r); }, &d.ue_.rho.coeff(j, 0));
    project_cell(space, j, [&](real r) { return d.ene_d_any(r); }, &d.ue_.ene.coeff(j, 0));
  }

  // gravity of rho^e, anchored like the main solve at the inner face
  GravityAnchors anchors;
  anchors.m_inner = d.explicit_ ? ud_->m_inner : real(0);
  d.grav_e_ = solve_gravity(d.ue_.rho, g_newton_, anchors, /*dphi_only=*/true);
  return d;
}

std::array<real, 3> modified_trace(const EquilibriumDecomposition& decomp,
                                   const StateField& u, int cell, bool outer_face) {
  const real r = u.space().mesh().face(outer_face ? cell + 1 : cell);
  std::array<real, 3> trace{
      outer_face ? u.rho.trace_outer(cell) : u.rho.trace_inner(cell),
      outer_face ? u.mom.trace_outer(cell) : u.mom.trace_inner(cell),
      outer_face ? u.ene.trace_outer(cell) : u.ene.trace_inner(cell)};
  if (!decomp.valid(cell)) return trace;
  const StateField& ue = decomp.ue();
  trace[0] += decomp.rho_d(cell, r) -
              (outer_face ? ue.rho.trace_outer(cell) : ue.rho.trace_inner(cell));
  trace[1] -= outer_face ? ue.mom.trace_outer(cell) : ue.mom.trace_inner(cell);
  trace[2] += decomp.ene_d(cell, r) -
              (outer_face ? ue.ene.trace_outer(cell) : ue.ene.trace_inner(cell));
  return trace;
}

}  // namespace sphdg
