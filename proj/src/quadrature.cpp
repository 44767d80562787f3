#include "sphdg/quadrature.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace sphdg {

void legendre(int k, real x, real* p) {
  p[0] = 1;
  if (k == 0) return;
  p[1] = x;
  for (int m = 1; m < k; ++m)
    p[m + 1] = ((2 * m + 1) * x * p[m] - m * p[m - 1]) / (m + 1);
}

void legendre_deriv(int k, real x, real* p, real* dp) {
  legendre(k, x, p);
  dp[0] = 0;
  if (k == 0) return;
  dp[1] = 1;
  for (int m = 1; m < k; ++m)
    dp[m + 1] = ((2 * m + 1) * (p[m] + x * dp[m]) - m * dp[m - 1]) / (m + 1);
}

std::vector<real> legendre_coeffs(int m) {
  std::vector<real> pm1{1};  // P_0
  if (m == 0) return pm1;
  std::vector<real> pm{0, 1};  // P_1
  for (int n = 1; n < m; ++n) {
    std::vector<real> next(static_cast<size_t>(n) + 2, 0);
    for (size_t i = 0; i < pm.size(); ++i) next[i + 1] += (2 * n + 1) * pm[i] / (n + 1);
    for (size_t i = 0; i < pm1.size(); ++i) next[i] -= real(n) * pm1[i] / (n + 1);
    pm1 = std::move(pm);
    pm = std::move(next);
  }
  return pm;
}

namespace {

Quadrature make_gauss(int q) {
  if (q < 1) throw std::invalid_argument("Quadrature: need at least one point");
  Quadrature rule;
  rule.x.resize(static_cast<size_t>(q));
  rule.w.resize(static_cast<size_t>(q));
  std::vector<real> p(static_cast<size_t>(q) + 1), dp(static_cast<size_t>(q) + 1);
  for (int i = 0; i < q; ++i) {
    // Newton from the Chebyshev estimate of the i-th root of P_q
    real x = -std::cos(pi * (real(i) + real(0.75)) / (real(q) + real(0.5)));
    for (int it = 0; it < 100; ++it) {
      legendre_deriv(q, x, p.data(), dp.data());
      const real dx = p[static_cast<size_t>(q)] / dp[static_cast<size_t>(q)];
      x -= dx;
      if (std::abs(dx) < real(1e-17) * std::max(real(1), std::abs(x))) break;
    }
    legendre_deriv(q, x, p.data(), dp.data());
    rule.x[static_cast<size_t>(i)] = x;
    rule.w[static_cast<size_t>(i)] =
        real(2) / ((real(1) - x * x) * dp[static_cast<size_t>(q)] * dp[static_cast<size_t>(q)]);
  }
  return rule;
}

}  // namespace

const Quadrature& Quadrature::gauss(int q) {
  static std::mutex mtx;
  static std::map<int, Quadrature> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(q);
  if (it == cache.end()) it = cache.emplace(q, make_gauss(q)).first;
  return it->second;
}

}  // namespace sphdg
