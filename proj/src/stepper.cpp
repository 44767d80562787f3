#include "sphdg/stepper.hpp"

#include <cmath>
#include <sstream>

namespace sphdg {

TimeStepper::TimeStepper(const DGSpace* space, const Scenario* scn, SchemeOptions opts,
                         LimiterConfig limiter, int rk_order)
    : op_(space, scn, opts), limiter_(limiter), rk_order_(rk_order) {
  if (rk_order < 1 || rk_order > 3)
    throw std::invalid_argument("TimeStepper: rk_order must be 1, 2 or 3");
}

real TimeStepper::cfl_dt(const StateField& u, real cfl) const {
  const DGSpace& space = op_.space();
  const Quadrature& quad = space.vol_quad();
  const Eos& eos = op_.scenario().eos;
  real dt = std::numeric_limits<real>::infinity();
  for (int j = 0; j < space.n_cells(); ++j) {
    real speed = 0;
    for (int q = 0; q < quad.size(); ++q) {
      const real x = quad.x[static_cast<size_t>(q)];
      const real rho = u.rho.eval_local(j, x);
      const real mom = u.mom.eval_local(j, x);
      const real ene = u.ene.eval_local(j, x);
      if (!(rho > 0)) throw solver_error("cfl_dt: non-positive density");
      const real vel = mom / rho;
      const real c = sound_speed(eos, rho, (ene - real(0.5) * mom * vel) / rho);
      speed = std::max(speed, std::abs(vel) + c);
    }
    if (!std::isfinite(double(speed)) || speed <= 0)
      throw solver_error("cfl_dt: non-finite wave speed in cell " + std::to_string(j));
    dt = std::min(dt, space.mesh().width(j) / speed);
  }
  return cfl * dt;
}

void TimeStepper::check_state(const StateField& u, real t) const {
  const DGSpace& space = op_.space();
  const Quadrature& quad = space.vol_quad();
  const Eos& eos = op_.scenario().eos;
  for (int j = 0; j < space.n_cells(); ++j) {
    auto fail = [&](const char* what, real r, real v) {
      std::ostringstream msg;
      msg << what << " (" << double(v) << ") in cell " << j << " at r = " << double(r)
          << ", t = " << double(t);
      throw solver_error(msg.str());
    };
    auto probe = [&](real x, real r) {
      const real rho = u.rho.eval_local(j, x);
      if (!(rho > 0)) fail("negative density after stage", r, rho);
      const real mom = u.mom.eval_local(j, x);
      const real ene = u.ene.eval_local(j, x);
      const real p = pressure(eos, rho, (ene - real(0.5) * mom * mom / rho) / rho);
      if (!(p > 0)) fail("negative pressure after stage", r, p);
    };
    probe(-1, space.mesh().face(j));
    probe(1, space.mesh().face(j + 1));
    for (int q = 0; q < quad.size(); ++q)
      probe(quad.x[static_cast<size_t>(q)], space.node_r(j, q));
  }
}

TimeStepper::StageOut TimeStepper::advance(const StateField& un,
                                           const std::vector<StageEval>& evals,
                                           const std::vector<real>& weights, real h,
                                           real t_new) const {
  const DGSpace& space = op_.space();
  const int n = space.n_cells();
  const int nm = space.n_modes();
  const int nq = space.vol_quad().size();
  const bool tec = op_.options().tec_energy;

  // weighted combination of the stored evaluations
  std::vector<real> rows(evals[0].rows.size(), 0);
  for (size_t s = 0; s < weights.size(); ++s)
    for (size_t i = 0; i < rows.size(); ++i) rows[i] += weights[s] * evals[s].rows[i];

  StageOut out;
  out.u = StateField(&space);

  DGField rate(&space);
  apply_inverse_mass(space, rows, 0, rate);
  for (size_t i = 0; i < rate.data().size(); ++i)
    out.u.rho.data()[i] = un.rho.data()[i] + h * rate.data()[i];
  apply_inverse_mass(space, rows, 1, rate);
  for (size_t i = 0; i < rate.data().size(); ++i)
    out.u.mom.data()[i] = un.mom.data()[i] + h * rate.data()[i];

  GravityField phi_new;
  if (tec) {
    // potential of the updated density closes the energy equation
    phi_new = solve_gravity(out.u.rho, op_.scenario().g_newton, op_.scenario().anchors(t_new));
    std::vector<FluxVector> flux_combo(static_cast<size_t>(n) + 1);
    for (size_t s = 0; s < weights.size(); ++s)
      for (size_t i = 0; i < flux_combo.size(); ++i)
        flux_combo[i] += weights[s] * evals[s].flux[i];
    std::vector<real> mom_combo(static_cast<size_t>(n) * nq, 0);
    for (size_t s = 0; s < weights.size(); ++s)
      for (size_t i = 0; i < mom_combo.size(); ++i)
        mom_combo[i] += weights[s] * evals[s].mom_nodes[i];
    DGField drho_dt(&space);
    for (size_t i = 0; i < drho_dt.data().size(); ++i)
      drho_dt.data()[i] = (out.u.rho.data()[i] - un.rho.data()[i]) / h;

    std::vector<real> tec_rows(static_cast<size_t>(n) * nm, 0);
    op_.energy_tec_rows(flux_combo, mom_combo, drho_dt, evals[0].gravity, phi_new, tec_rows);
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < nm; ++m)
        rows[static_cast<size_t>(j * 3 + 2) * nm + m] += tec_rows[static_cast<size_t>(j) * nm + m];
  } else {
    for (size_t s = 0; s < weights.size(); ++s)
      for (int j = 0; j < n; ++j)
        for (int m = 0; m < nm; ++m)
          rows[static_cast<size_t>(j * 3 + 2) * nm + m] +=
              weights[s] * evals[s].s3_std[static_cast<size_t>(j) * nm + m];
  }
  apply_inverse_mass(space, rows, 2, rate);
  for (size_t i = 0; i < rate.data().size(); ++i)
    out.u.ene.data()[i] = un.ene.data()[i] + h * rate.data()[i];

  // limiter pass: TVB on all three variables, then the energy correction
  // that moves the gravitational bookkeeping onto the limited density
  if (limiter_.enabled) {
    const DGField rho_pre = out.u.rho;
    const auto troubled = detect_and_limit(out.u, evals.back().decomp, limiter_);
    for (char c : troubled) out.troubled += c;
    if (out.troubled > 0) {
      if (op_.options().limiter_correction) {
        if (!tec)
          phi_new =
              solve_gravity(rho_pre, op_.scenario().g_newton, op_.scenario().anchors(t_new));
        out.gravity =
            solve_gravity(out.u.rho, op_.scenario().g_newton, op_.scenario().anchors(t_new));
        energy_correction(out.u.ene, rho_pre, phi_new, out.u.rho, out.gravity);
      } else if (tec) {
        out.gravity =
            solve_gravity(out.u.rho, op_.scenario().g_newton, op_.scenario().anchors(t_new));
      }
    }
  }
  if (tec && out.gravity.has_phi() == false && out.troubled == 0) out.gravity = phi_new;

  check_state(out.u, t_new);
  return out;
}

StepRecord TimeStepper::step(StateField& u, real t, real dt) const {
  StepRecord rec;
  rec.dt = dt;

  std::vector<StageEval> evals;
  evals.reserve(3);
  evals.push_back(op_.evaluate(u, t));

  auto record_flux = [&](int s) {
    const DGSpace& space = op_.space();
    const real rr = space.mesh().r_outer();
    const real rl = space.mesh().r_min();
    const FluxVector& fo = evals[static_cast<size_t>(s)].flux.back();
    const FluxVector& fi = evals[static_cast<size_t>(s)].flux.front();
    rec.outer_ene_flux_r2[static_cast<size_t>(s)] = rr * rr * fo.ene;
    rec.outer_mass_flux_r2[static_cast<size_t>(s)] = rr * rr * fo.mass;
    rec.inner_ene_flux_r2[static_cast<size_t>(s)] = rl * rl * fi.ene;
  };
  record_flux(0);

  auto eval_next = [&](const StageOut& st, real ts) {
    const GravityField* hint = st.gravity.has_phi() ? &st.gravity : nullptr;
    evals.push_back(op_.evaluate(st.u, ts, hint));
    record_flux(static_cast<int>(evals.size()) - 1);
  };

  if (rk_order_ == 1) {
    StageOut s1 = advance(u, evals, {1}, dt, t + dt);
    rec.troubled_cells += s1.troubled;
    u = std::move(s1.u);
    rec.n_stages = 1;
    rec.weights = {1, 0, 0};
    return rec;
  }

  if (rk_order_ == 2) {
    StageOut s1 = advance(u, evals, {1}, dt, t + dt);
    rec.troubled_cells += s1.troubled;
    eval_next(s1, t + dt);
    StageOut s2 = advance(u, evals, {real(0.5), real(0.5)}, dt, t + dt);
    rec.troubled_cells += s2.troubled;
    u = std::move(s2.u);
    rec.n_stages = 2;
    rec.weights = {real(0.5), real(0.5), 0};
    return rec;
  }

  StageOut s1 = advance(u, evals, {1}, dt, t + dt);
  rec.troubled_cells += s1.troubled;
  eval_next(s1, t + dt);
  StageOut s2 = advance(u, evals, {real(0.5), real(0.5)}, dt / 2, t + dt / 2);
  rec.troubled_cells += s2.troubled;
  eval_next(s2, t + dt / 2);
  StageOut s3 = advance(
      u, evals, {real(1) / 6, real(1) / 6, real(4) / 6}, dt, t + dt);
  rec.troubled_cells += s3.troubled;
  u = std::move(s3.u);
  rec.n_stages = 3;
  rec.weights = {real(1) / 6, real(1) / 6, real(4) / 6};
  return rec;
}

}  // namespace sphdg
