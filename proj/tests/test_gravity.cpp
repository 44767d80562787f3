#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "sphdg/gravity.hpp"

using namespace sphdg;

namespace {

// adaptive Simpson oracle for int_a^b f
double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
               double fb, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15 * eps)
    return left + right + (left + right - whole) / 15;
  return simpson(f, a, m, fa, flm, fm, eps / 2, depth - 1) +
         simpson(f, m, b, fm, frm, fb, eps / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double eps = 1e-14) {
  const double m = 0.5 * (a + b);
  return simpson(f, a, b, f(a), f(m), f(b), eps, 40);
}

}  // namespace

TEST_CASE("uniform sphere: monopole field and outer anchor") {
  const DGSpace space(Mesh::uniform(0, 1, 8), 2);
  const double rho_bar = 2.5, g_newton = 1.0 / (4 * M_PI);
  DGField rho = project_gauss_radau(space, [&](double) { return rho_bar; });
  const GravityField gf = solve_gravity(rho, g_newton);

  for (double r : {0.1, 0.35, 0.7, 1.0}) {
    const int j = space.mesh().locate(r);
    CHECK(gf.dphi(j, r) ==
          doctest::Approx(4 * M_PI * g_newton / 3 * rho_bar * r).epsilon(1e-13));
  }
  CHECK(gf.phi_face(8) == 0.0);
  CHECK(gf.dphi(0, 0.0) == 0.0);
}

TEST_CASE("faces are single valued from both sides") {
  const DGSpace space(Mesh::uniform(0, 2, 6), 2);
  DGField rho = project_gauss_radau(space, [](double r) { return 1.0 + 0.3 * std::sin(2 * r); });
  const GravityField gf = solve_gravity(rho, 0.5);
  for (int i = 1; i < 6; ++i) {
    const double r = space.mesh().face(i);
    const double ulp = 4 * 2.3e-16;
    CHECK(std::abs(gf.dphi(i - 1, r) - gf.dphi(i, r)) <=
          ulp * std::max(1.0, std::abs(gf.dphi(i, r))) * 4);
    CHECK(std::abs(gf.phi(i - 1, r) - gf.phi(i, r)) <=
          1e-14 * std::max(1.0, std::abs(gf.phi(i, r))));
  }
}

TEST_CASE("random density against an adaptive quadrature oracle") {
  const DGSpace space(Mesh::uniform(0, 1.5, 5), 2);
  std::mt19937 rng(19);
  std::uniform_real_distribution<double> dist(0.2, 1.0);
  DGField rho(&space);
  for (int j = 0; j < 5; ++j)
    for (int m = 0; m <= 2; ++m) rho.coeff(j, m) = dist(rng) / (m + 1.0);
  const double g_newton = 0.7;
  const GravityField gf = solve_gravity(rho, g_newton);

  auto integrand = [&](double t) { return rho.eval(t) * t * t; };
  const double r_outer = 1.5;
  const double m_outer = integrate(integrand, 0, r_outer);
  for (double r : {0.2, 0.5, 0.9, 1.2, 1.45}) {
    const double m_r = integrate(integrand, 0, r);
    const double dphi_exact = 4 * M_PI * g_newton / (r * r) * m_r;
    CHECK(std::abs(gf.dphi(space.mesh().locate(r), r) - dphi_exact) <= 1e-12 * std::abs(dphi_exact));
    // integrate M(t)/t^2 by parts so the oracle needs no nested quadrature:
    // phi(r) = -4 pi G [ M(r)/r - M(R)/R + int_r^R rho t dt ]
    const double phi_exact =
        -4 * M_PI * g_newton *
        (m_r / r - m_outer / r_outer + integrate([&](double t) { return rho.eval(t) * t; }, r, r_outer));
    CHECK(std::abs(gf.phi(space.mesh().locate(r), r) - phi_exact) <=
          1e-11 * std::max(1.0, std::abs(phi_exact)));
  }
}

TEST_CASE("pointwise poisson identity") {
  // 4 pi G rho r^2 = d/dr (r^2 dphi) at 5 random points per cell
  const DGSpace space(Mesh::geometric(0, 0.01, 1.3, 12), 2);
  DGField rho = project_gauss_radau(space, [](double r) { return std::exp(-r) + 0.1 * r; });
  const double g_newton = 2.0;
  const GravityField gf = solve_gravity(rho, g_newton);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> xdist(-1.0, 1.0);
  for (int j = 0; j < space.n_cells(); ++j) {
    for (int s = 0; s < 5; ++s) {
      const double x = xdist(rng);
      const double r = space.mesh().midpoint(j) + 0.5 * space.mesh().width(j) * x;
      const double lhs = 4 * M_PI * g_newton * rho.eval_local(j, x) * r * r;
      CHECK(std::abs(gf.w_derivative(j, r) - lhs) <= 1e-11 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("linearity of the solve") {
  const DGSpace space(Mesh::uniform(0, 1, 7), 1);
  DGField r1 = project_gauss_radau(space, [](double r) { return 1.0 + r; });
  DGField r2 = project_gauss_radau(space, [](double r) { return std::cos(r); });
  const double a = 0.6, b = -1.7;
  DGField combo(&space);
  for (size_t i = 0; i < combo.data().size(); ++i)
    combo.data()[i] = a * r1.data()[i] + b * r2.data()[i];
  const GravityField g1 = solve_gravity(r1, 1.0);
  const GravityField g2 = solve_gravity(r2, 1.0);
  const GravityField gc = solve_gravity(combo, 1.0);
  for (int i = 0; i <= 7; ++i) {
    const double expect_d = a * g1.dphi_face(i) + b * g2.dphi_face(i);
    const double expect_p = a * g1.phi_face(i) + b * g2.phi_face(i);
    CHECK(std::abs(gc.dphi_face(i) - expect_d) <= 4 * 2.3e-16 * std::max(1.0, std::abs(expect_d)) * 4);
    CHECK(std::abs(gc.phi_face(i) - expect_p) <= 1e-14 * std::max(1.0, std::abs(expect_p)));
  }
}

TEST_CASE("enclosed mass is monotone for nonnegative density") {
  const DGSpace space(Mesh::uniform(0, 3, 20), 2);
  DGField rho = project_gauss_radau(space, [](double r) { return std::max(0.01, 1.0 - 0.3 * r); });
  const GravityField gf = solve_gravity(rho, 1.0);
  for (int i = 0; i < 20; ++i) CHECK(gf.w_face(i + 1) >= gf.w_face(i));
}

TEST_CASE("truncated domain requires anchors; inner phi anchoring works") {
  const DGSpace space(Mesh::uniform(0.5, 1.0, 6), 2);
  DGField rho = project_gauss_radau(space, [](double r) { return std::exp(-r) / (r * r); });
  CHECK_THROWS_AS(solve_gravity(project_gauss_radau(DGSpace(Mesh::uniform(0, 1, 2), 1),
                                                    [](double) { return 1.0; }),
                                1.0, GravityAnchors{0.1, false, 0.0}),
                  std::invalid_argument);

  // manufactured-style anchors: r^2 dphi(0.5) = -exp(-0.5), phi(0.5) = 0
  GravityAnchors anchors;
  anchors.m_inner = -std::exp(-0.5);
  anchors.phi_at_inner = true;
  anchors.phi_value = 0.0;
  const GravityField gf = solve_gravity(rho, 1.0 / (4 * M_PI), anchors);
  CHECK(gf.phi_face(0) == 0.0);
  // oracle integrates the projected density itself (4 pi G = 1 here):
  // W(r) = m_in + int_0.5^r rho_h t^2 dt, phi by parts as above
  const double m_in = anchors.m_inner;
  for (double r : {0.55, 0.75, 0.95}) {
    const int j = space.mesh().locate(r);
    const double m_r = integrate([&](double t) { return rho.eval(t) * t * t; }, 0.5, r);
    CHECK(gf.dphi(j, r) == doctest::Approx((m_in + m_r) / (r * r)).epsilon(1e-11));
    const double phi_exact = m_in * (2.0 - 1.0 / r) - m_r / r +
                             integrate([&](double t) { return rho.eval(t) * t; }, 0.5, r);
    CHECK(gf.phi(j, r) == doctest::Approx(phi_exact).epsilon(1e-10));
  }
  // and the field indeed approximates the smooth solution at projection order
  for (double r : {0.55, 0.75, 0.95})
    CHECK(gf.dphi(space.mesh().locate(r), r) ==
          doctest::Approx(-std::exp(-r) / (r * r)).epsilon(1e-4));
}
