#include "sphdg/lane_emden.hpp"

#include <array>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace sphdg {

namespace {

bool near(real a, real b) { return std::abs(a - b) <= real(1e-12) * std::max(real(1), std::abs(b)); }

// theta^n with the negative side clamped to zero, so fractional n never NaNs
// one step past the surface
real theta_pow(real theta, real n) { return theta > 0 ? std::pow(theta, n) : real(0); }

struct Rhs {
  real n;
  // y = (theta, phi); F(0, y) = 0 by the centre boundary conditions
  std::array<real, 2> operator()(real xi, const std::array<real, 2>& y) const {
    if (xi == 0) return {0, 0};
    return {-y[1] / (xi * xi), theta_pow(y[0], n) * xi * xi};
  }
};

// Fehlberg 6-stage tableau, fifth-order weights
constexpr double kC[6] = {0, 1. / 4, 3. / 8, 12. / 13, 1, 1. / 2};
constexpr double kA[6][5] = {
    {},
    {1. / 4},
    {3. / 32, 9. / 32},
    {1932. / 2197, -7200. / 2197, 7296. / 2197},
    {439. / 216, -8, 3680. / 513, -845. / 4104},
    {-8. / 27, 2, -3544. / 2565, 1859. / 4104, -11. / 40}};
constexpr double kB[6] = {16. / 135, 0, 6656. / 12825, 28561. / 56430, -9. / 50, 2. / 55};

}  // namespace

real analytic_theta(real n, real xi) {
  if (xi < 0) throw std::invalid_argument("analytic_theta: xi must be >= 0");
  if (near(n, 0)) return real(1) - xi * xi / real(6);
  if (near(n, 1)) return sinc(xi);
  if (near(n, 5)) return real(1) / std::sqrt(real(1) + xi * xi / real(3));
  throw std::invalid_argument("analytic_theta: closed form only for n = 0, 1, 5");
}

PolytropeProfile analytic_profile(real n) {
  PolytropeProfile p;
  p.analytic_ = true;
  if (near(n, 0)) {
    p.n_ = 0;
    p.xi_surface_ = std::sqrt(real(6));
  } else if (near(n, 1)) {
    p.n_ = 1;
    p.xi_surface_ = pi;
  } else if (near(n, 5)) {
    p.n_ = 5;  // infinite surface
  } else {
    throw std::invalid_argument("analytic_profile: n must be 0, 1 or 5");
  }
  return p;
}

PolytropeProfile solve_lane_emden(real n, real h, real xi_max) {
  if (!(h > 0)) throw std::invalid_argument("solve_lane_emden: step must be positive");
  if (n < 0) throw std::invalid_argument("solve_lane_emden: index must be >= 0");

  PolytropeProfile p;
  p.n_ = n;
  p.h_ = h;

  const Rhs rhs{n};
  std::array<real, 2> y{1, 0};
  real xi = 0;
  p.theta_.push_back(1);
  p.dtheta_.push_back(0);

  std::array<std::array<real, 2>, 6> k{};
  while (xi < xi_max) {
    for (int i = 0; i < 6; ++i) {
      std::array<real, 2> yi = y;
      for (int m = 0; m < i; ++m) {
        yi[0] += h * real(kA[i][m]) * k[static_cast<size_t>(m)][0];
        yi[1] += h * real(kA[i][m]) * k[static_cast<size_t>(m)][1];
      }
      k[static_cast<size_t>(i)] = rhs(xi + real(kC[i]) * h, yi);
    }
    std::array<real, 2> ynew = y;
    for (int i = 0; i < 6; ++i) {
      ynew[0] += h * real(kB[i]) * k[static_cast<size_t>(i)][0];
      ynew[1] += h * real(kB[i]) * k[static_cast<size_t>(i)][1];
    }
    const real xinew = xi + h;
    const real dtheta = xinew > 0 ? -ynew[1] / (xinew * xinew) : real(0);
    p.theta_.push_back(ynew[0]);
    p.dtheta_.push_back(dtheta);
    if (ynew[0] <= 0) {
      // locate the surface on the bracketing step
      p.xi_surface_ = xi + h * y[0] / (y[0] - ynew[0]);
      break;
    }
    y = ynew;
    xi = xinew;
  }
  return p;
}

std::pair<real, real> PolytropeProfile::eval(real xi) const {
  if (xi < 0) throw std::invalid_argument("PolytropeProfile::eval: xi must be >= 0");
  if (xi >= xi_surface_) return {0, 0};

  if (analytic_) {
    if (n_ == 0) return {real(1) - xi * xi / real(6), -xi / real(3)};
    if (n_ == 1) {
      if (xi < real(1e-4)) {
        const real x2 = xi * xi;
        return {real(1) - x2 / real(6) + x2 * x2 / real(120),
                -xi / real(3) + xi * x2 / real(30)};
      }
      const real s = std::sin(xi), c = std::cos(xi);
      return {s / xi, (c - s / xi) / xi};
    }
    const real den = real(1) + xi * xi / real(3);
    const real th = real(1) / std::sqrt(den);
    return {th, -xi / real(3) * th / den};
  }

  if (theta_.empty()) throw std::logic_error("PolytropeProfile: empty table");
  const size_t last = theta_.size() - 1;
  size_t i = static_cast<size_t>(xi / h_);
  if (i >= last) i = last - 1;
  const real t = (xi - real(i) * h_) / h_;
  const real y0 = theta_[i], y1 = theta_[i + 1];
  const real m0 = dtheta_[i] * h_, m1 = dtheta_[i + 1] * h_;
  const real t2 = t * t, t3 = t2 * t;
  const real th = (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * m0 +
                  (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * m1;
  const real dth = ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * m0 +
                    (-6 * t2 + 6 * t) * y1 + (3 * t2 - 2 * t) * m1) / h_;
  return {std::max(th, real(0)), dth};
}

void PolytropeProfile::dump(std::ostream& os) const {
  if (analytic_) {
    const real end = std::isfinite(xi_surface_) ? xi_surface_ : real(10);
    for (int i = 0; i <= 1000; ++i) {
      const real xi = end * real(i) / real(1000);
      os << xi << ' ' << eval(xi).first << '\n';
    }
    return;
  }
  for (size_t i = 0; i < theta_.size(); ++i) os << real(i) * h_ << ' ' << theta_[i] << '\n';
}

const PolytropeProfile& ProfileCache::get(real n) const {
  for (const auto& p : profiles_)
    if (std::abs(p->index() - n) <= real(1e-12) * std::max(real(1), n)) return *p;
  for (real n0 : {real(0), real(1), real(5)}) {
    if (std::abs(n - n0) <= real(1e-12) * std::max(real(1), n0)) {
      profiles_.push_back(std::make_unique<PolytropeProfile>(analytic_profile(n0)));
      return *profiles_.back();
    }
  }
  profiles_.push_back(std::make_unique<PolytropeProfile>(solve_lane_emden(n)));
  return *profiles_.back();
}

}  // namespace sphdg
