#include "sphdg/problems.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

namespace sphdg {

namespace {

struct RadialTable {
  std::vector<real> r, rho, u;

  real interp(const std::vector<real>& col, real rr) const {
    if (rr <= r.front()) return col.front();
    if (rr >= r.back()) return col.back();
    auto it = std::upper_bound(r.begin(), r.end(), rr);
    const size_t i = static_cast<size_t>(it - r.begin());
    const real t = (rr - r[i - 1]) / (r[i] - r[i - 1]);
    return col[i - 1] + t * (col[i] - col[i - 1]);
  }
};

RadialTable load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open profile file: " + path);
  RadialTable tbl;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    double r, rho, u = 0;
    if (!(ls >> r >> rho)) throw std::invalid_argument("malformed profile line: " + line);
    ls >> u;
    tbl.r.push_back(r);
    tbl.rho.push_back(rho);
    tbl.u.push_back(u);
  }
  if (tbl.r.size() < 2) throw std::invalid_argument("profile file needs at least two rows");
  return tbl;
}

// approximate pre-collapse profile used when no reference table is supplied:
// a flat core rolling over to the steep power law of the self-similar
// solution, with infall at half the local free-fall speed
RadialTable fallback_collapse_profile(real gamma, real g_newton) {
  RadialTable tbl;
  const real rho_c = 1e9, r_core = 1e8, r_max = 1.1e10;
  const real expo = real(1) / (2 - gamma);
  const int n = 4096;
  tbl.r.resize(n);
  tbl.rho.resize(n);
  tbl.u.resize(n);
  real mass = 0;
  for (int i = 0; i < n; ++i) {
    const real r = r_max * real(i) / real(n - 1);
    const real rho = rho_c * std::pow(real(1) + sqr(r / r_core), -expo);
    tbl.r[static_cast<size_t>(i)] = r;
    tbl.rho[static_cast<size_t>(i)] = rho;
    if (i > 0) {
      const real rp = tbl.r[static_cast<size_t>(i) - 1];
      const real rhop = tbl.rho[static_cast<size_t>(i) - 1];
      mass += real(0.5) * (rho * r * r + rhop * rp * rp) * (r - rp);
      tbl.u[static_cast<size_t>(i)] = -real(0.5) * std::sqrt(2 * g_newton * 4 * pi * mass / r);
    }
  }
  return tbl;
}

void apply_overrides(Scenario& scn, const std::map<std::string, real>& ov,
                     std::map<std::string, real>& local) {
  for (const auto& [key, value] : ov) {
    if (key == "t_end")
      scn.t_end = value;
    else if (key == "stop_rhoc")
      scn.stop_rhoc = value;
    else if (key == "cfl")
      scn.cfl = value;
    else if (local.count(key))
      local[key] = value;
    else {
      std::string known = "t_end, stop_rhoc, cfl";
      for (const auto& [k, v] : local) known += ", " + k;
      throw std::invalid_argument("scenario '" + scn.name + "': unknown parameter '" + key +
                                  "' (known: " + known + ")");
    }
  }
}

Scenario wb_polytrope(const std::string& name, bool gamma12) {
  Scenario scn;
  scn.name = name;
  scn.g_newton = 1 / (4 * pi);
  scn.r_outer = 1;
  scn.default_cells = 200;
  scn.t_end = 4;
  scn.bc_inner = BcKind::reflecting;
  scn.bc_outer = BcKind::symmetric_copy;
  if (gamma12) {
    scn.eos = IdealGas{1.2};
    scn.rho0 = [](real r) { return std::pow(real(1) + r * r / 18, real(-2.5)); };
    scn.p0 = [](real r) { return std::pow(real(1) + r * r / 18, real(-3)); };
  } else {
    scn.eos = IdealGas{2.0};
    scn.rho0 = [](real r) { return sinc(r / std::sqrt(real(2))); };
    scn.p0 = [](real r) { return sqr(sinc(r / std::sqrt(real(2)))); };
  }
  scn.mom0 = [](real) { return real(0); };
  return scn;
}

}  // namespace

Scenario make_scenario(const std::string& name, const std::map<std::string, real>& overrides,
                       const std::string& profile_path) {
  Scenario scn;

  if (name == "wb_gamma2" || name == "wb_gamma12") {
    scn = wb_polytrope(name, name == "wb_gamma12");
    std::map<std::string, real> local;
    apply_overrides(scn, overrides, local);
  } else if (name == "perturb") {
    scn = wb_polytrope(name, false);
    scn.name = name;
    scn.r_outer = 0.5;
    scn.default_cells = 100;
    scn.t_end = 0.2;
    std::map<std::string, real> local{{"A", 1e-6}};
    apply_overrides(scn, overrides, local);
    const real amp = local["A"];
    auto base = scn.p0;
    scn.p0 = [base, amp](real r) { return base(r) + amp * std::exp(-100 * r * r); };
  } else if (name == "manufactured") {
    scn.name = name;
    scn.eos = IdealGas{2.0};
    scn.g_newton = 1 / (4 * pi);
    scn.r_min = 0.5;
    scn.r_outer = 1;
    scn.default_cells = 50;
    scn.t_end = 0.1;
    scn.bc_inner = BcKind::dirichlet;
    scn.bc_outer = BcKind::dirichlet;
    scn.has_exact = true;
    scn.exact = [](real r, real t) -> std::array<real, 3> {
      const real rho = std::exp(t - r) / (r * r);
      const real p = 1 / (r * r);
      return {rho, rho, p + real(0.5) * rho};  // u = 1, gamma = 2
    };
    scn.rho0 = [](real r) { return std::exp(-r) / (r * r); };
    scn.mom0 = [](real r) { return std::exp(-r) / (r * r); };
    scn.p0 = [](real r) { return 1 / (r * r); };
    scn.has_extra_source = true;
    scn.source = [](real r, real t) -> std::array<real, 3> {
      const real r4 = sqr(r * r);
      const real e2 = std::exp(2 * (t - r));
      return {0, -(e2 + 2 * r) / r4, -e2 / r4};
    };
    scn.anchors = [](real t) {
      GravityAnchors a;
      a.m_inner = -std::exp(t - real(0.5));  // r^2 dPhi/dr at r = 0.5
      a.phi_at_inner = true;
      a.phi_value = 0;
      return a;
    };
    scn.recovery = RecoveryMode::explicit_profile;
    ExplicitEquilibrium ud;
    ud.rho = [](real r) { return sinc(r / std::sqrt(real(2))); };
    ud.pressure = [](real r) { return sqr(sinc(r / std::sqrt(real(2)))); };
    ud.energy = ud.pressure;  // gamma = 2
    // enclosed mass of the steady profile at r = 0.5 (4 pi G = 1)
    ud.m_inner = 2 * std::sqrt(real(2)) * std::sin(real(0.5) / std::sqrt(real(2))) -
                 std::cos(real(0.5) / std::sqrt(real(2)));
    scn.explicit_ud = std::move(ud);
    std::map<std::string, real> local;
    apply_overrides(scn, overrides, local);
  } else if (name == "explosion") {
    scn.name = name;
    scn.eos = IdealGas{2.0};
    scn.g_newton = 1;
    scn.r_outer = 0.5;
    scn.default_cells = 200;
    scn.t_end = 0.15;
    scn.bc_inner = BcKind::reflecting;
    scn.bc_outer = BcKind::reflecting;  // velocity pinned to zero at the wall
    scn.limiter_default = true;
    std::map<std::string, real> local{{"alpha", 10}, {"r1", 0.1}, {"kappa", 1}};
    apply_overrides(scn, overrides, local);
    const real kappa = local["kappa"], alpha = local["alpha"], r1 = local["r1"];
    scn.rho0 = [kappa](real r) { return sinc(std::sqrt(2 * pi / kappa) * r); };
    auto rho = scn.rho0;
    scn.p0 = [rho, kappa, alpha, r1](real r) {
      return (r <= r1 ? alpha : real(1)) * kappa * sqr(rho(r));
    };
    scn.mom0 = [](real) { return real(0); };
  } else if (name == "yahil") {
    scn.name = name;
    const real gamma = 1.3, kappa = 9.54e14;
    scn.eos = IdealGas{gamma};
    scn.g_newton = 6.67430e-8;
    scn.r_outer = 1e10;
    scn.geometric = true;
    scn.dr1 = 1e5;
    scn.growth = 1.03203;
    scn.default_cells = 256;
    scn.t_end = 0.1495;
    scn.bc_inner = BcKind::reflecting;
    scn.bc_outer = BcKind::extrapolate;
    scn.limiter_default = true;
    scn.four_pi = true;
    scn.central_window = 2e5;
    std::map<std::string, real> local;
    apply_overrides(scn, overrides, local);
    auto tbl = std::make_shared<RadialTable>(
        profile_path.empty() ? fallback_collapse_profile(gamma, scn.g_newton)
                             : load_profile(profile_path));
    if (profile_path.empty()) {
      // the constructed profile has its own collapse clock; run on density
      scn.t_end = 0.2;
      scn.stop_rhoc = 1.5e14;
    }
    scn.rho0 = [tbl](real r) { return tbl->interp(tbl->rho, r); };
    scn.mom0 = [tbl](real r) { return tbl->interp(tbl->rho, r) * tbl->interp(tbl->u, r); };
    scn.p0 = [tbl, kappa, gamma](real r) {
      return kappa * std::pow(tbl->interp(tbl->rho, r), gamma);
    };
  } else if (name == "toy_collapse") {
    scn.name = name;
    const real kappa = 4.897e14, gamma1 = 1.325;
    scn.eos = HybridEos::make(kappa, gamma1, 2.5, 1.5, 2e14);
    scn.g_newton = 6.67430e-8;
    scn.r_outer = 1.5e8;
    scn.geometric = true;
    scn.mesh_table = {{128, {2e5, 1.02292}},
                      {256, {1e5, 1.01136}},
                      {512, {5e4, 1.005659}},
                      {1024, {2.5e4, 1.002823}},
                      {2048, {1.25e4, 1.00141}}};
    scn.default_cells = 256;
    scn.t_end = 0.11;
    scn.bc_inner = BcKind::reflecting;
    scn.bc_outer = BcKind::extrapolate;
    scn.limiter_default = true;
    scn.four_pi = true;
    scn.central_window = 2e5;  // 2 km
    std::map<std::string, real> local{{"rho_c", 1e10}};
    apply_overrides(scn, overrides, local);
    const real rho_c = local["rho_c"];
    // gamma = 4/3 hydrostatic configuration, internal energy then reset to
    // the gamma_1 polytrope to start the collapse
    const real gamma_eq = real(4) / 3;
    const real alpha = std::sqrt(gamma_eq / (gamma_eq - 1) * kappa *
                                 std::pow(rho_c, gamma_eq - 2) / (4 * pi * scn.g_newton));
    auto profile = std::make_shared<PolytropeProfile>(solve_lane_emden(3.0));
    scn.rho0 = [profile, rho_c, alpha](real r) {
      const real theta = profile->eval(r / alpha).first;
      return rho_c * theta * theta * theta;
    };
    auto rho = scn.rho0;
    scn.p0 = [rho, kappa, gamma1](real r) { return kappa * std::pow(rho(r), gamma1); };
    scn.mom0 = [](real) { return real(0); };
  } else {
    throw std::invalid_argument(
        "unknown scenario '" + name +
        "' (available: wb_gamma2, wb_gamma12, perturb, manufactured, explosion, yahil, "
        "toy_collapse)");
  }
  return scn;
}

Mesh build_mesh(const Scenario& scn, int n_cells) {
  const int n = n_cells > 0 ? n_cells : scn.default_cells;
  if (!scn.geometric) return Mesh::uniform(scn.r_min, scn.r_outer, n);
  if (!scn.mesh_table.empty()) {
    auto it = scn.mesh_table.find(n);
    if (it == scn.mesh_table.end()) {
      std::string known;
      for (const auto& [k, v] : scn.mesh_table) known += (known.empty() ? "" : ", ") + std::to_string(k);
      throw std::invalid_argument("scenario '" + scn.name + "': no mesh recipe for N=" +
                                  std::to_string(n) + " (rows: " + known + ")");
    }
    return Mesh::geometric(scn.r_min, it->second.first, it->second.second, n);
  }
  return Mesh::geometric(scn.r_min, scn.dr1, scn.growth, n);
}

StateField initial_state(const Scenario& scn, const DGSpace& space) {
  StateField u(&space);
  const bool hybrid = std::holds_alternative<HybridEos>(scn.eos);
  const real gamma = hybrid ? real(0) : std::get<IdealGas>(scn.eos).gamma;
  auto ene = [&](real r) -> real {
    const real rho = scn.rho0(r), mom = scn.mom0(r);
    real rhoe;
    if (hybrid)
      rhoe = std::get<HybridEos>(scn.eos).rhoe_poly(rho);
    else
      rhoe = scn.p0(r) / (gamma - 1);
    return rhoe + real(0.5) * mom * mom / rho;
  };
  for (int j = 0; j < space.n_cells(); ++j) {
    project_cell(space, j, scn.rho0, &u.rho.coeff(j, 0));
    project_cell(space, j, scn.mom0, &u.mom.coeff(j, 0));
    project_cell(space, j, ene, &u.ene.coeff(j, 0));
    if (!(u.rho.trace_inner(j) > 0))
      throw solver_error("initial_state: non-positive density trace in cell " + std::to_string(j));
  }
  return u;
}

std::array<real, 3> ghost_state(const Scenario& scn, const std::array<real, 3>& trace,
                                bool outer, real t) {
  const BcKind kind = outer ? scn.bc_outer : scn.bc_inner;
  switch (kind) {
    case BcKind::reflecting:
      return {trace[0], -trace[1], trace[2]};
    case BcKind::extrapolate:
    case BcKind::symmetric_copy:
      return trace;
    case BcKind::dirichlet:
      if (!scn.has_exact)
        throw solver_error("ghost_state: dirichlet boundary without an exact solution");
      return scn.exact(outer ? scn.r_outer : scn.r_min, t);
  }
  return trace;
}

std::array<real, 3> extra_source(const Scenario& scn, real r, real t) {
  if (!scn.has_extra_source) return {0, 0, 0};
  return scn.source(r, t);
}

}  // namespace sphdg
