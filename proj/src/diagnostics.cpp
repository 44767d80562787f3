#include "sphdg/diagnostics.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace sphdg {

EnergyBreakdown energies(const StateField& u, const GravityField& gravity, const Eos& eos,
                         bool four_pi) {
  const DGSpace& space = u.space();
  const Quadrature& quad = space.vol_quad();
  (void)eos;
  EnergyBreakdown out;
  for (int j = 0; j < space.n_cells(); ++j) {
    const real half = real(0.5) * space.mesh().width(j);
    for (int q = 0; q < quad.size(); ++q) {
      const real x = quad.x[static_cast<size_t>(q)];
      const real r = space.node_r(j, q);
      const real wr2 = half * quad.w[static_cast<size_t>(q)] * r * r;
      const real rho = u.rho.eval_local(j, x);
      const real mom = u.mom.eval_local(j, x);
      const real ene = u.ene.eval_local(j, x);
      const real kin = real(0.5) * mom * mom / rho;
      out.e_int += wr2 * (ene - kin);
      out.e_kin += wr2 * kin;
      out.e_grav += wr2 * real(0.5) * rho * gravity.phi(j, r);
    }
  }
  const real shell = four_pi ? 4 * pi : real(1);
  out.e_int *= shell;
  out.e_kin *= shell;
  out.e_grav *= shell;
  out.e_tot = out.e_int + out.e_kin + out.e_grav;
  return out;
}

real central_density(const StateField& u, real window) {
  const DGSpace& space = u.space();
  const Mesh& mesh = space.mesh();
  const Quadrature& quad = space.vol_quad();
  const real w_eff = std::max(window, mesh.face(1));
  real num = 0, den = 0;
  for (int j = 0; j < space.n_cells(); ++j) {
    if (mesh.face(j) >= w_eff) break;
    const real lo = mesh.face(j);
    const real hi = std::min(mesh.face(j + 1), w_eff);
    const real mid = real(0.5) * (lo + hi), half = real(0.5) * (hi - lo);
    for (int q = 0; q < quad.size(); ++q) {
      const real r = mid + half * quad.x[static_cast<size_t>(q)];
      const real x = (r - mesh.midpoint(j)) / (real(0.5) * mesh.width(j));
      const real wr2 = half * quad.w[static_cast<size_t>(q)] * r * r;
      num += wr2 * u.rho.eval_local(j, x);
      den += wr2;
    }
  }
  return num / den;
}

std::array<real, 3> l1_error(const StateField& u,
                             const std::function<std::array<real, 3>(real)>& ref) {
  const DGSpace& space = u.space();
  const Quadrature& quad = space.vol_quad();
  std::array<real, 3> err{0, 0, 0};
  for (int j = 0; j < space.n_cells(); ++j) {
    const real half = real(0.5) * space.mesh().width(j);
    for (int q = 0; q < quad.size(); ++q) {
      const real x = quad.x[static_cast<size_t>(q)];
      const real r = space.node_r(j, q);
      const auto exact = ref(r);
      const real w = half * quad.w[static_cast<size_t>(q)];
      err[0] += w * std::abs(u.rho.eval_local(j, x) - exact[0]);
      err[1] += w * std::abs(u.mom.eval_local(j, x) - exact[1]);
      err[2] += w * std::abs(u.ene.eval_local(j, x) - exact[2]);
    }
  }
  return err;
}

void EnergyLedger::start(real t, const EnergyBreakdown& e, real rho_c) {
  rows_.clear();
  rows_.push_back({t, e.e_int, e.e_kin, e.e_grav, e.e_tot, 0, 0, rho_c});
}

void EnergyLedger::record_step(real t, const EnergyBreakdown& e, const StepRecord& rec,
                               real rho_c) {
  const real shell = four_pi_ ? 4 * pi : real(1);
  real boundary = 0;
  for (int s = 0; s < rec.n_stages; ++s) {
    const real w = rec.weights[static_cast<size_t>(s)];
    boundary += w * (rec.outer_ene_flux_r2[static_cast<size_t>(s)] -
                     rec.inner_ene_flux_r2[static_cast<size_t>(s)]);
    if (phi_outer_ != 0)
      boundary += w * rec.outer_mass_flux_r2[static_cast<size_t>(s)] * phi_outer_;
  }
  const LedgerRow& prev = rows_.back();
  const real de = e.e_tot - prev.e_tot + shell * rec.dt * boundary;
  rows_.push_back({t, e.e_int, e.e_kin, e.e_grav, e.e_tot, de, prev.de_cum + de, rho_c});
}

void EnergyLedger::write_csv(std::ostream& os) const {
  os << "t,E_int,E_kin,E_grav,E_tot,dE_step,dE_cum,rho_c\n";
  os << std::setprecision(17);
  for (const LedgerRow& r : rows_)
    os << double(r.t) << ',' << double(r.e_int) << ',' << double(r.e_kin) << ','
       << double(r.e_grav) << ',' << double(r.e_tot) << ',' << double(r.de_step) << ','
       << double(r.de_cum) << ',' << double(r.rho_c) << '\n';
}

}  // namespace sphdg
