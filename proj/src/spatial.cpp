#include "sphdg/spatial.hpp"

#include <cmath>
#include <sstream>
#include <thread>

namespace sphdg {

namespace {

void parallel_for(int n, int threads, const std::function<void(int, int)>& body) {
  if (threads <= 1 || n < 2 * threads) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  const int chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] { body(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

std::array<real, 3> trace_of(const StateField& u, int j, bool outer) {
  if (outer) return {u.rho.trace_outer(j), u.mom.trace_outer(j), u.ene.trace_outer(j)};
  return {u.rho.trace_inner(j), u.mom.trace_inner(j), u.ene.trace_inner(j)};
}

}  // namespace

SpatialOperator::SpatialOperator(const DGSpace* space, const Scenario* scn, SchemeOptions opts)
    : space_(space),
      scn_(scn),
      opts_(opts),
      recovery_(opts.well_balanced ? scn->recovery : RecoveryMode::disabled, scn->eos,
                scn->g_newton,
                opts.well_balanced ? scn->explicit_ud : std::nullopt) {}

StageEval SpatialOperator::evaluate(const StateField& u, real t,
                                    const GravityField* gravity_hint) const {
  const DGSpace& space = *space_;
  const Mesh& mesh = space.mesh();
  const Quadrature& quad = space.vol_quad();
  const int n = space.n_cells();
  const int nm = space.n_modes();
  const int nq = quad.size();
  const Eos& eos = scn_->eos;

  StageEval ev;
  ev.decomp = recovery_.decompose(u);
  ev.gravity = gravity_hint ? *gravity_hint
                            : solve_gravity(u.rho, scn_->g_newton, scn_->anchors(t));
  ev.flux.resize(static_cast<size_t>(n) + 1);
  ev.rows.assign(static_cast<size_t>(n) * 3 * nm, 0);
  ev.s3_std.assign(static_cast<size_t>(n) * nm, 0);
  ev.mom_nodes.assign(static_cast<size_t>(n) * nq, 0);

  const EquilibriumDecomposition& dec = ev.decomp;

  // ---- interface states and fluxes -------------------------------------
  // interior side values are the modified traces u* = u^d + (u - u^e);
  // boundary ghosts get the same treatment with the policy applied to both
  // u and u^e, so an equilibrium state stays balanced at the walls.
  auto ghost_pair = [&](bool outer) -> std::pair<std::array<real, 3>, std::array<real, 3>> {
    const int j = outer ? n - 1 : 0;
    const std::array<real, 3> tr = trace_of(u, j, outer);
    const std::array<real, 3> ghost = ghost_state(*scn_, tr, outer, t);
    if (!dec.valid(j)) return {ghost, ghost};
    const real rf = outer ? mesh.r_outer() : mesh.r_min();
    const std::array<real, 3> ud{dec.rho_d(j, rf), 0, dec.ene_d(j, rf)};
    std::array<real, 3> ghost_e;
    const BcKind kind = outer ? scn_->bc_outer : scn_->bc_inner;
    if (kind == BcKind::dirichlet) {
      ghost_e = ud;
    } else {
      const std::array<real, 3> tre = trace_of(dec.ue(), j, outer);
      ghost_e = ghost_state(*scn_, tre, outer, t);
    }
    return {ghost, {ud[0] + ghost[0] - ghost_e[0], ud[1] + ghost[1] - ghost_e[1],
                    ud[2] + ghost[2] - ghost_e[2]}};
  };

  auto face_flux = [&](int i) -> FluxVector {
    const real rf = mesh.face(i);
    if (rf == 0) return {};  // killed by the r^2 weight
    std::array<real, 3> left, right;
    if (i == 0)
      left = ghost_pair(false).second;
    else
      left = modified_trace(dec, u, i - 1, true);
    if (i == n)
      right = ghost_pair(true).second;
    else
      right = modified_trace(dec, u, i, false);
    FluxVector f;
    try {
      f = hllc(prim_state(eos, left[0], left[1], left[2]),
               prim_state(eos, right[0], right[1], right[2]));
    } catch (const solver_error& err) {
      std::ostringstream msg;
      msg << err.what() << " at face " << i << " (r = " << double(rf) << ", t = " << double(t)
          << ")";
      throw solver_error(msg.str());
    }
    if (!std::isfinite(double(f.mass)) || !std::isfinite(double(f.mom)) ||
        !std::isfinite(double(f.ene))) {
      std::ostringstream msg;
      msg << "non-finite interface flux at face " << i << " (r = " << double(rf)
          << ", t = " << double(t) << ")";
      throw solver_error(msg.str());
    }
    return f;
  };

  for (int i = 0; i <= n; ++i) ev.flux[static_cast<size_t>(i)] = face_flux(i);

  // ---- cell rows ---------------------------------------------------------
  parallel_for(n, opts_.threads, [&](int lo, int hi) {
    std::vector<real> node_rho(static_cast<size_t>(nq)), node_mom(static_cast<size_t>(nq)),
        node_ene(static_cast<size_t>(nq));
    for (int j = lo; j < hi; ++j) {
      const real rl = mesh.face(j), rr = mesh.face(j + 1);
      const real half = real(0.5) * mesh.width(j);
      real* rows = ev.rows.data() + static_cast<size_t>(j) * 3 * nm;
      real* s3 = ev.s3_std.data() + static_cast<size_t>(j) * nm;
      real* momn = ev.mom_nodes.data() + static_cast<size_t>(j) * nq;

      for (int q = 0; q < nq; ++q) {
        real vr = 0, vm = 0, ve = 0;
        for (int m = 0; m < nm; ++m) {
          vr += u.rho.coeff(j, m) * space.basis(q, m);
          vm += u.mom.coeff(j, m) * space.basis(q, m);
          ve += u.ene.coeff(j, m) * space.basis(q, m);
        }
        node_rho[static_cast<size_t>(q)] = vr;
        node_mom[static_cast<size_t>(q)] = vm;
        node_ene[static_cast<size_t>(q)] = ve;
        momn[q] = vm;
      }

      const FluxVector& fl = ev.flux[static_cast<size_t>(j)];
      const FluxVector& fr = ev.flux[static_cast<size_t>(j) + 1];
      const bool wb_cell = opts_.well_balanced && dec.valid(j);
      const real pd_l = wb_cell ? dec.p_d(j, rl) : real(0);
      const real pd_r = wb_cell ? dec.p_d(j, rr) : real(0);

      for (int q = 0; q < nq; ++q) {
        const real r = space.node_r(j, q);
        const real w = quad.w[static_cast<size_t>(q)];
        const real rho = node_rho[static_cast<size_t>(q)];
        const real mom = node_mom[static_cast<size_t>(q)];
        const real ene = node_ene[static_cast<size_t>(q)];
        if (!(rho > 0)) {
          std::ostringstream msg;
          msg << "non-positive density " << double(rho) << " in cell " << j
              << " (r = " << double(r) << ", t = " << double(t) << ")";
          throw solver_error(msg.str());
        }
        const real vel = mom / rho;
        const real p = pressure(eos, rho, (ene - real(0.5) * mom * vel) / rho);
        const real wg = ev.gravity.w_value(j, r);  // r^2 dPhi/dr

        real pe = 0, we = 0, rho_e = 0;
        if (wb_cell) {
          real me = 0, ee = 0;
          for (int m = 0; m < nm; ++m) {
            rho_e += dec.ue().rho.coeff(j, m) * space.basis(q, m);
            me += dec.ue().mom.coeff(j, m) * space.basis(q, m);
            ee += dec.ue().ene.coeff(j, m) * space.basis(q, m);
          }
          if (rho_e > 0) {
            const real ve_ = me / rho_e;
            pe = pressure(eos, rho_e, (ee - real(0.5) * me * ve_) / rho_e);
          }
          we = dec.gravity_e().w_value(j, r);
        }

        std::array<real, 3> wsrc{0, 0, 0};
        if (scn_->has_extra_source) wsrc = extra_source(*scn_, r, t);

        for (int m = 0; m < nm; ++m) {
          const real psi = space.basis(q, m);
          const real dpsi = space.basis_deriv(q, m);  // jacobian cancels below
          // volume flux: + int f(u) . dv/dr r^2 dr
          rows[0 * nm + m] += w * mom * dpsi * r * r;
          rows[1 * nm + m] += w * (mom * vel + p) * dpsi * r * r;
          rows[2 * nm + m] += w * (ene + p) * vel * dpsi * r * r;
          // momentum source: int (2p/r - rho dPhi/dr) psi r^2 dr
          rows[1 * nm + m] += half * w * (2 * p * r - rho * wg) * psi;
          if (wb_cell) {
            // correction: -int p^e dpsi r^2 - int (2p^e/r - rho^e dPhi^e) psi r^2
            rows[1 * nm + m] -= w * pe * dpsi * r * r;
            rows[1 * nm + m] -= half * w * (2 * pe * r - rho_e * we) * psi;
          }
          if (scn_->has_extra_source) {
            rows[0 * nm + m] += half * w * wsrc[0] * psi * r * r;
            rows[1 * nm + m] += half * w * wsrc[1] * psi * r * r;
            rows[2 * nm + m] += half * w * wsrc[2] * psi * r * r;
          }
          // standard energy source: -int (rho u) dPhi/dr delta r^2 dr
          s3[m] -= half * w * mom * wg * psi;
        }
      }

      for (int m = 0; m < nm; ++m) {
        const real sgn = (m % 2 == 0) ? real(1) : real(-1);  // psi_m(-1)
        for (int eq = 0; eq < 3; ++eq)
          rows[eq * nm + m] += rl * rl * fl[eq] * sgn - rr * rr * fr[eq];
        if (wb_cell)
          rows[1 * nm + m] += rr * rr * pd_r - rl * rl * pd_l * sgn;
      }
    }
  });

  return ev;
}

void SpatialOperator::energy_tec_rows(const std::vector<FluxVector>& flux_combo,
                                      const std::vector<real>& mom_nodes_combo,
                                      const DGField& drho_dt, const GravityField& phi_a,
                                      const GravityField& phi_b, std::vector<real>& rows) const {
  const DGSpace& space = *space_;
  const Mesh& mesh = space.mesh();
  const Quadrature& quad = space.vol_quad();
  const int n = space.n_cells();
  const int nm = space.n_modes();
  const int nq = quad.size();

  std::vector<real> phi_face(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    phi_face[static_cast<size_t>(i)] = real(0.5) * (phi_a.phi_face(i) + phi_b.phi_face(i));

  parallel_for(n, opts_.threads, [&](int lo, int hi) {
    for (int j = lo; j < hi; ++j) {
      const real rl = mesh.face(j), rr = mesh.face(j + 1);
      const real half = real(0.5) * mesh.width(j);
      real* out = rows.data() + static_cast<size_t>(j) * nm;
      const real bl = rl * rl * flux_combo[static_cast<size_t>(j)].mass * phi_face[static_cast<size_t>(j)];
      const real br = rr * rr * flux_combo[static_cast<size_t>(j) + 1].mass *
                      phi_face[static_cast<size_t>(j) + 1];
      for (int q = 0; q < nq; ++q) {
        const real r = space.node_r(j, q);
        const real w = quad.w[static_cast<size_t>(q)];
        const real phi = real(0.5) * (phi_a.phi(j, r) + phi_b.phi(j, r));
        real drho = 0;
        for (int m = 0; m < nm; ++m) drho += drho_dt.coeff(j, m) * space.basis(q, m);
        const real momc = mom_nodes_combo[static_cast<size_t>(j) * nq + q];
        for (int m = 0; m < nm; ++m) {
          out[m] -= half * w * drho * phi * space.basis(q, m) * r * r;
          out[m] += w * momc * phi * space.basis_deriv(q, m) * r * r;
        }
      }
      for (int m = 0; m < nm; ++m) {
        const real sgn = (m % 2 == 0) ? real(1) : real(-1);
        out[m] += bl * sgn - br;
      }
    }
  });
}

void apply_inverse_mass(const DGSpace& space, const std::vector<real>& rows, int eq,
                        DGField& rate) {
  const int nm = space.n_modes();
  for (int j = 0; j < space.n_cells(); ++j)
    space.solve_mass(j, rows.data() + static_cast<size_t>(j * 3 + eq) * nm, &rate.coeff(j, 0));
}

}  // namespace sphdg
