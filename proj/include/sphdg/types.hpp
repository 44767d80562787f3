#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace sphdg {

#ifdef SPHDG_EXTENDED_PRECISION
using real = long double;
#else
using real = double;
#endif

inline constexpr real pi = 3.14159265358979323846264338327950288L;

/// Thrown when the solver reaches an unphysical or inconsistent state
/// (negative density, NaN flux, ...). Carries step/cell context in what().
struct solver_error : std::runtime_error {
  explicit solver_error(const std::string& msg) : std::runtime_error(msg) {}
};

inline real sqr(real x) { return x * x; }

// sin(x)/x, stable through x = 0
inline real sinc(real x) {
  if (std::abs(x) < real(1e-4)) {
    real x2 = x * x;
    return real(1) - x2 / real(6) + x2 * x2 / real(120);
  }
  return std::sin(x) / x;
}

}  // namespace sphdg
