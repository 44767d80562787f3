#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sphdg/equilibrium.hpp"
#include "sphdg/problems.hpp"

using namespace sphdg;

namespace {

// gamma = 2 polytrope with rho0 = 1, kappa = 1, G = 1/(4 pi)
double rho_eq(double r) { return sinc(r / std::sqrt(2.0)); }
double p_eq(double r) { return rho_eq(r) * rho_eq(r); }

StateField equilibrium_state(const DGSpace& space) {
  const Scenario scn = make_scenario("wb_gamma2");
  return initial_state(scn, space);
}

}  // namespace

TEST_CASE("recovery reproduces the analytic gamma=2 equilibrium") {
  const DGSpace space(Mesh::uniform(0, 1, 40), 2);
  const StateField u = equilibrium_state(space);
  const EquilibriumRecovery rec(RecoveryMode::recover, IdealGas{2.0}, 1 / (4 * M_PI));
  const EquilibriumDecomposition d = rec.decompose(u);

  REQUIRE(d.active());
  CHECK(d.kappa() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d.alpha() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  for (double r : {0.01, 0.3, 0.62, 0.99}) {
    const int j = space.mesh().locate(r);
    REQUIRE(d.valid(j));
    CHECK(d.rho_d(j, r) == doctest::Approx(rho_eq(r)).epsilon(1e-12));
    CHECK(d.p_d(j, r) == doctest::Approx(p_eq(r)).epsilon(1e-12));
    CHECK(d.ene_d(j, r) == doctest::Approx(p_eq(r)).epsilon(1e-12));  // gamma = 2
  }

  // u^e equals the state itself up to round-off, so u^f is round-off small
  for (int j = 0; j < space.n_cells(); ++j)
    for (int m = 0; m <= 2; ++m) {
      CHECK(std::abs(d.ue().rho.coeff(j, m) - u.rho.coeff(j, m)) <= 1e-12);
      CHECK(d.ue().mom.coeff(j, m) == 0.0);
      CHECK(std::abs(d.ue().ene.coeff(j, m) - u.ene.coeff(j, m)) <= 1e-12);
    }
}

TEST_CASE("recovery from the gamma=1.2 closed-form equilibrium") {
  const DGSpace space(Mesh::uniform(0, 1, 32), 2);
  const Scenario scn = make_scenario("wb_gamma12");
  const StateField u = initial_state(scn, space);
  const EquilibriumRecovery rec(RecoveryMode::recover, IdealGas{1.2}, 1 / (4 * M_PI));
  const EquilibriumDecomposition d = rec.decompose(u);
  REQUIRE(d.active());
  for (double r : {0.1, 0.45, 0.93}) {
    const int j = space.mesh().locate(r);
    const double expected = std::pow(1.0 + r * r / 18.0, -2.5);
    CHECK(d.rho_d(j, r) == doctest::Approx(expected).epsilon(1e-11));
  }
}

TEST_CASE("far-from-equilibrium cells are masked") {
  const DGSpace space(Mesh::uniform(0, 0.5, 20), 2);
  // explosion-like data: central pressure inflated tenfold
  const Scenario scn = make_scenario("explosion");
  const StateField u = initial_state(scn, space);
  const EquilibriumRecovery rec(RecoveryMode::recover, IdealGas{2.0}, 1.0);
  const EquilibriumDecomposition d = rec.decompose(u);
  REQUIRE(d.active());
  // the recovered profile matches the overpressured core, so cells in the
  // ambient region violate p^d <= 2 p_h and drop out
  CHECK(d.valid(0));
  bool any_masked = false;
  for (int j = 0; j < space.n_cells(); ++j) any_masked |= !d.valid(j);
  CHECK(any_masked);
  for (int j = 0; j < space.n_cells(); ++j) {
    if (!d.valid(j)) {
      CHECK(d.rho_d(j, space.mesh().midpoint(j)) == 0.0);
      for (int m = 0; m <= 2; ++m) CHECK(d.ue().rho.coeff(j, m) == 0.0);
    }
  }
}

TEST_CASE("non-positive inner trace disables the decomposition") {
  const DGSpace space(Mesh::uniform(0, 1, 4), 1);
  StateField u(&space);
  for (int j = 0; j < 4; ++j) {
    u.rho.coeff(j, 0) = -1.0;
    u.ene.coeff(j, 0) = 1.0;
  }
  const EquilibriumRecovery rec(RecoveryMode::recover, IdealGas{2.0}, 1.0);
  CHECK_FALSE(rec.decompose(u).active());
}

TEST_CASE("modified interface states") {
  const DGSpace space(Mesh::uniform(0, 1, 16), 2);
  const StateField u = equilibrium_state(space);
  const EquilibriumRecovery rec(RecoveryMode::recover, IdealGas{2.0}, 1 / (4 * M_PI));
  const EquilibriumDecomposition d = rec.decompose(u);

  // at equilibrium both sides collapse onto u^d(face)
  for (int i = 1; i < 16; ++i) {
    const double rf = space.mesh().face(i);
    const auto left = modified_trace(d, u, i - 1, true);
    const auto right = modified_trace(d, u, i, false);
    CHECK(std::abs(left[0] - d.rho_d(i - 1, rf)) <= 1e-13);
    CHECK(std::abs(right[0] - d.rho_d(i, rf)) <= 1e-13);
    CHECK(std::abs(left[1]) <= 1e-13);
    CHECK(std::abs(left[2] - right[2]) <= 1e-13);
  }

  // a perturbation moves the jump entirely into the fluctuation
  StateField up = u;
  for (int j = 0; j < 16; ++j) up.rho.coeff(j, 1) += 1e-3 * (j % 3 - 1);
  const EquilibriumDecomposition dp = rec.decompose(up);
  for (int i = 4; i < 12; ++i) {
    const auto left = modified_trace(dp, up, i - 1, true);
    const auto right = modified_trace(dp, up, i, false);
    const double uf_left = up.rho.trace_outer(i - 1) - dp.ue().rho.trace_outer(i - 1);
    const double uf_right = up.rho.trace_inner(i) - dp.ue().rho.trace_inner(i);
    const double ud_gap = dp.rho_d(i - 1, space.mesh().face(i)) - dp.rho_d(i, space.mesh().face(i));
    CHECK(left[0] - right[0] ==
          doctest::Approx(uf_left - uf_right + ud_gap).epsilon(1e-10));
  }
}

TEST_CASE("explicit profile mode") {
  const DGSpace space(Mesh::uniform(0.5, 1.0, 8), 2);
  const Scenario scn = make_scenario("manufactured");
  const StateField u = initial_state(scn, space);
  const EquilibriumRecovery rec(RecoveryMode::explicit_profile, scn.eos, scn.g_newton,
                                scn.explicit_ud);
  const EquilibriumDecomposition d = rec.decompose(u);
  REQUIRE(d.active());
  for (double r : {0.55, 0.8, 0.97}) {
    const int j = space.mesh().locate(r);
    CHECK(d.valid(j));
    CHECK(d.rho_d(j, r) == doctest::Approx(rho_eq(r)).epsilon(1e-14));
    CHECK(d.p_d(j, r) == doctest::Approx(p_eq(r)).epsilon(1e-14));
  }
  // the equilibrium gravity balances the explicit profile: dp^d/dr = -rho^d dPhi^e/dr
  for (double r : {0.6, 0.75, 0.9}) {
    const int j = space.mesh().locate(r);
    const double h = 1e-6;
    const double dpd = (p_eq(r + h) - p_eq(r - h)) / (2 * h);
    CHECK(-d.gravity_e().dphi(j, r) * d.rho_d(j, r) == doctest::Approx(dpd).epsilon(1e-5));
  }
}

TEST_CASE("disabled mode is inert") {
  const DGSpace space(Mesh::uniform(0, 1, 4), 1);
  const StateField u = equilibrium_state(space);
  const EquilibriumRecovery rec(RecoveryMode::disabled, IdealGas{2.0}, 1.0);
  const EquilibriumDecomposition d = rec.decompose(u);
  CHECK_FALSE(d.active());
  const auto tr = modified_trace(d, u, 2, true);
  CHECK(tr[0] == u.rho.trace_outer(2));
  CHECK(tr[1] == u.mom.trace_outer(2));
  CHECK(tr[2] == u.ene.trace_outer(2));
}
