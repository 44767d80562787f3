#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sphdg/diagnostics.hpp"
#include "sphdg/problems.hpp"

using namespace sphdg;

TEST_CASE("energies: zero state and component identity") {
  const DGSpace space(Mesh::uniform(0, 1, 4), 2);
  StateField zero(&space);
  const GravityField g = solve_gravity(zero.rho, 1.0);
  const EnergyBreakdown e = energies(zero, g, IdealGas{2.0}, false);
  CHECK(e.e_int == 0.0);
  CHECK(e.e_kin == 0.0);
  CHECK(e.e_grav == 0.0);
  CHECK(e.e_tot == 0.0);

  const Scenario scn = make_scenario("explosion");
  const DGSpace s2(build_mesh(scn, 20), 2);
  StateField u = initial_state(scn, s2);
  for (int j = 0; j < 20; ++j) u.mom.coeff(j, 0) = 0.05;
  const GravityField g2 = solve_gravity(u.rho, scn.g_newton);
  const EnergyBreakdown e2 = energies(u, g2, scn.eos, false);
  const double largest =
      std::max({std::abs(e2.e_int), std::abs(e2.e_kin), std::abs(e2.e_grav)});
  CHECK(std::abs(e2.e_tot - (e2.e_int + e2.e_kin + e2.e_grav)) <= 4 * 2.3e-16 * largest);
}

TEST_CASE("uniform sphere gravitational energy against the closed form") {
  // with Phi anchored to the potential of an isolated sphere, the canonical
  // 1/2 rho Phi integral gives -(3/5) G M^2 / R
  const double rho_bar = 3.0, g_newton = 2.0, radius = 1.0;
  const DGSpace space(Mesh::uniform(0, radius, 64), 2);
  Scenario scn;
  scn.eos = IdealGas{2.0};
  scn.rho0 = [&](double) { return rho_bar; };
  scn.mom0 = [](double) { return 0.0; };
  scn.p0 = [](double) { return 1.0; };
  const StateField u = initial_state(scn, space);
  const double mass = 4.0 / 3.0 * M_PI * rho_bar * radius * radius * radius;
  GravityAnchors anchors;
  anchors.phi_value = -g_newton * mass / radius;
  const GravityField g = solve_gravity(u.rho, g_newton, anchors);
  const EnergyBreakdown e = energies(u, g, scn.eos, true);
  const double exact = -0.6 * g_newton * mass * mass / radius;
  CHECK(e.e_grav == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("central density") {
  const DGSpace space(Mesh::uniform(0, 1, 10), 2);
  Scenario scn;
  scn.eos = IdealGas{2.0};
  scn.rho0 = [](double) { return 7.5; };
  scn.mom0 = [](double) { return 0.0; };
  scn.p0 = [](double) { return 1.0; };
  const StateField u = initial_state(scn, space);
  CHECK(central_density(u, 0.25) == doctest::Approx(7.5).epsilon(1e-13));
  // window below the first face falls back to the first cell
  CHECK(central_density(u, 1e-6) == doctest::Approx(7.5).epsilon(1e-13));

  Scenario lin = scn;
  lin.rho0 = [](double r) { return 1.0 + r; };
  const StateField v = initial_state(lin, space);
  // int (1+r) r^2 / int r^2 over [0, 0.1]
  const double exact = (1e-3 / 3 + 1e-4 / 4) / (1e-3 / 3);
  CHECK(central_density(v, 0.1) == doctest::Approx(exact).epsilon(1e-11));
}

TEST_CASE("l1 error") {
  const Scenario scn = make_scenario("wb_gamma2");
  const DGSpace space(build_mesh(scn, 16), 2);
  const StateField u = initial_state(scn, space);
  auto self = [&](double r) -> std::array<double, 3> {
    return {u.rho.eval(r), u.mom.eval(r), u.ene.eval(r)};
  };
  const auto zero_err = l1_error(u, self);
  CHECK(zero_err[0] == 0.0);
  CHECK(zero_err[2] == 0.0);

  auto shifted = [&](double r) -> std::array<double, 3> {
    return {u.rho.eval(r) + 0.25, u.mom.eval(r), u.ene.eval(r)};
  };
  const auto err = l1_error(u, shifted);
  CHECK(err[0] == doctest::Approx(0.25).epsilon(1e-12));  // |domain| = 1
}

TEST_CASE("ledger bookkeeping") {
  EnergyLedger ledger(false);
  EnergyBreakdown e0;
  e0.e_int = 10.0;
  e0.e_tot = 10.0;
  ledger.start(0.0, e0, 1.0);

  // forward-Euler record: single stage, outflow through the outer face
  StepRecord rec;
  rec.dt = 0.1;
  rec.n_stages = 1;
  rec.weights = {1, 0, 0};
  rec.outer_ene_flux_r2 = {2.0, 0, 0};
  EnergyBreakdown e1;
  e1.e_int = 9.8;
  e1.e_tot = 9.8;
  ledger.record_step(0.1, e1, rec, 1.0);
  CHECK(ledger.rows().back().de_step == doctest::Approx(-0.2 + 0.1 * 2.0).epsilon(1e-14));

  // rk3 weighting 1/6, 1/6, 4/6
  StepRecord rk3;
  rk3.dt = 0.1;
  rk3.n_stages = 3;
  rk3.weights = {1.0 / 6, 1.0 / 6, 4.0 / 6};
  rk3.outer_ene_flux_r2 = {3.0, 3.0, 3.0};
  EnergyBreakdown e2 = e1;
  ledger.record_step(0.2, e2, rk3, 1.0);
  CHECK(ledger.rows().back().de_step == doctest::Approx(0.1 * 3.0).epsilon(1e-13));
  CHECK(ledger.cumulative() ==
        doctest::Approx(ledger.rows()[1].de_step + ledger.rows()[2].de_step).epsilon(1e-14));

  std::ostringstream os;
  ledger.write_csv(os);
  CHECK(os.str().rfind("t,E_int,E_kin,E_grav,E_tot,dE_step,dE_cum,rho_c\n", 0) == 0);
}
