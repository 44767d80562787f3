#include "sphdg/driver.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace sphdg {

namespace {

SchemeOptions scheme_options(const RunConfig& cfg) {
  SchemeOptions opts;
  opts.threads = cfg.threads;
  if (cfg.scheme == "wb") {
    opts.well_balanced = true;
    opts.tec_energy = true;
    opts.limiter_correction = true;
  } else if (cfg.scheme == "standard") {
    opts.well_balanced = false;
    opts.tec_energy = false;
    opts.limiter_correction = false;
  } else if (cfg.scheme == "standard_corr") {
    opts.well_balanced = false;
    opts.tec_energy = false;
    opts.limiter_correction = true;
  } else {
    throw config_error("unknown scheme '" + cfg.scheme + "'");
  }
  return opts;
}

}  // namespace

Run::Run(const RunConfig& cfg)
    : cfg_(cfg),
      scn_(make_scenario(cfg.scenario, cfg.scenario_overrides, cfg.profile_path)),
      ledger_(false) {
  if (cfg_.t_end >= 0) scn_.t_end = cfg_.t_end;
  if (cfg_.cfl > 0) scn_.cfl = cfg_.cfl;
  if (!cfg_.limiter_enabled_set) cfg_.limiter.enabled = scn_.limiter_default;

  space_ = std::make_unique<DGSpace>(build_mesh(scn_, cfg_.n_cells), cfg_.degree);
  stepper_ = std::make_unique<TimeStepper>(space_.get(), &scn_, scheme_options(cfg_),
                                           cfg_.limiter, cfg_.rk_order);
  state_ = initial_state(scn_, *space_);
  ledger_ = EnergyLedger(scn_.four_pi, /*phi_outer=*/0);
}

GravityField Run::gravity() const {
  return solve_gravity(state_.rho, scn_.g_newton, scn_.anchors(t_));
}

void Run::write_snapshot(int step) const {
  if (cfg_.out_dir.empty()) return;
  std::ostringstream name;
  name << cfg_.out_dir << "/profile_" << std::setw(6) << std::setfill('0') << step << ".csv";
  std::ofstream os(name.str());
  os << "r,rho,u,p,phi\n" << std::setprecision(17);
  const GravityField grav = gravity();
  const Quadrature& quad = space_->vol_quad();
  for (int j = 0; j < space_->n_cells(); ++j)
    for (int q = 0; q < quad.size(); ++q) {
      const real x = quad.x[static_cast<size_t>(q)];
      const real r = space_->node_r(j, q);
      const real rho = state_.rho.eval_local(j, x);
      const real mom = state_.mom.eval_local(j, x);
      const real ene = state_.ene.eval_local(j, x);
      const real p = pressure(scn_.eos, rho, (ene - real(0.5) * mom * mom / rho) / rho);
      os << double(r) << ',' << double(rho) << ',' << double(mom / rho) << ',' << double(p)
         << ',' << double(grav.phi(j, r)) << '\n';
    }
}

RunReport Run::execute(std::ostream* log) {
  const auto wall_start = std::chrono::steady_clock::now();
  if (!cfg_.out_dir.empty()) std::filesystem::create_directories(cfg_.out_dir);

  RunReport report;
  const real window = scn_.central_window;
  real rho_c = central_density(state_, window);
  ledger_.start(0, energies(state_, gravity(), scn_.eos, scn_.four_pi), rho_c);
  report.bounce_time = 0;
  report.bounce_density = rho_c;

  constexpr int kMaxSteps = 20'000'000;
  int step = 0;
  while (t_ < scn_.t_end && step < kMaxSteps) {
    real dt = stepper_->cfl_dt(state_, scn_.cfl);
    dt = std::min(dt, scn_.t_end - t_);
    const StepRecord rec = stepper_->step(state_, t_, dt);
    t_ += dt;
    ++step;

    rho_c = central_density(state_, window);
    ledger_.record_step(t_, energies(state_, gravity(), scn_.eos, scn_.four_pi), rec, rho_c);
    if (rho_c > report.bounce_density) {
      report.bounce_density = rho_c;
      report.bounce_time = t_;
    }
    if (cfg_.snapshot_every > 0 && step % cfg_.snapshot_every == 0) write_snapshot(step);
    if (log && step % 500 == 0)
      *log << "step " << step << "  t = " << double(t_) << "  rho_c = " << double(rho_c)
           << "\n";
    if (scn_.stop_rhoc > 0 && rho_c >= scn_.stop_rhoc) break;
  }

  report.steps = step;
  report.t_final = t_;
  report.final_energy = energies(state_, gravity(), scn_.eos, scn_.four_pi);
  report.de_cum = ledger_.cumulative();
  report.final_central_density = rho_c;
  if (scn_.has_exact) {
    report.has_l1 = true;
    const real t = t_;
    const auto& exact = scn_.exact;
    report.l1 = l1_error(state_, [&](real r) { return exact(r, t); });
  }
  if (!cfg_.out_dir.empty()) {
    std::ofstream os(cfg_.out_dir + "/ledger.csv");
    ledger_.write_csv(os);
    write_snapshot(step);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return report;
}

RunReport run(const RunConfig& cfg, std::ostream* log) { return Run(cfg).execute(log); }

SweepResult convergence_sweep(const RunConfig& base, const std::vector<int>& meshes,
                              int ref_cells, std::ostream* log) {
  if (meshes.size() < 2)
    throw std::invalid_argument("convergence_sweep: need at least two meshes");

  SweepResult out;
  out.cells = meshes;

  // reference: exact solution if the scenario has one, otherwise a fine run
  std::unique_ptr<Run> ref_run;
  std::function<std::array<real, 3>(real)> ref;
  {
    const Scenario probe = make_scenario(base.scenario, base.scenario_overrides, base.profile_path);
    if (probe.has_exact) {
      const real t = base.t_end >= 0 ? base.t_end : probe.t_end;
      auto exact = probe.exact;
      ref = [exact, t](real r) { return exact(r, t); };
    } else {
      RunConfig rc = base;
      rc.n_cells = ref_cells;
      rc.out_dir.clear();
      ref_run = std::make_unique<Run>(rc);
      ref_run->execute(log);
      const StateField& uref = ref_run->state();
      ref = [&uref](real r) -> std::array<real, 3> {
        return {uref.rho.eval(r), uref.mom.eval(r), uref.ene.eval(r)};
      };
    }
  }

  for (int n : meshes) {
    RunConfig rc = base;
    rc.n_cells = n;
    rc.out_dir.clear();
    Run r(rc);
    r.execute(log);
    const auto err = l1_error(r.state(), ref);
    for (int v = 0; v < 3; ++v) out.errors[static_cast<size_t>(v)].push_back(err[static_cast<size_t>(v)]);
    if (log) {
      *log << "N = " << n << "  L1 = " << double(err[0]) << " " << double(err[1]) << " "
           << double(err[2]) << "\n";
    }
  }
  for (int v = 0; v < 3; ++v) {
    const auto& e = out.errors[static_cast<size_t>(v)];
    for (size_t i = 1; i < e.size(); ++i)
      out.rates[static_cast<size_t>(v)].push_back(std::log2(e[i - 1] / e[i]));
  }
  return out;
}

void print_sweep(const SweepResult& sweep, std::ostream& os) {
  os << std::setw(8) << "N" << std::setw(14) << "rho" << std::setw(8) << "rate" << std::setw(14)
     << "mom" << std::setw(8) << "rate" << std::setw(14) << "E" << std::setw(8) << "rate"
     << "\n";
  for (size_t i = 0; i < sweep.cells.size(); ++i) {
    os << std::setw(8) << sweep.cells[i];
    for (int v = 0; v < 3; ++v) {
      os << std::setw(14) << std::scientific << std::setprecision(3)
         << double(sweep.errors[static_cast<size_t>(v)][i]);
      if (i == 0)
        os << std::setw(8) << "-";
      else
        os << std::setw(8) << std::fixed << std::setprecision(2)
           << double(sweep.rates[static_cast<size_t>(v)][i - 1]);
    }
    os << "\n";
  }
}

}  // namespace sphdg
