#pragma once

#include <vector>

#include "sphdg/dg_field.hpp"
#include "sphdg/types.hpp"

namespace sphdg {

/// Boundary data for the Poisson sweeps. m_inner anchors the outward sweep:
/// it is r_min^2 * dPhi/dr at the inner face and must be 0 when r_min = 0.
/// Phi is pinned to phi_value at one face (outer by default).
struct GravityAnchors {
  real m_inner = 0;
  bool phi_at_inner = false;
  real phi_value = 0;
};

/// Closed-form gravitational field of a piecewise-polynomial density:
/// an outward sweep integrates rho r^2 exactly to give W(r) = r^2 dPhi/dr,
/// an inward (or outward) sweep accumulates Phi. Per cell the data is kept
/// in the shifted variable s = r - r_left, which stays well conditioned on
/// narrow cells at large radii; dPhi/dr = W(s)/r^2 and Phi uses the log-free
/// antiderivative D(s) = V(s) - W(s)/r with V' = 4 pi G rho (r_left + s).
class GravityField {
 public:
  real dphi(int j, real r) const;
  real phi(int j, real r) const;
  real dphi(real r) const;
  real phi(real r) const;

  real dphi_face(int i) const { return dphi_face_[static_cast<size_t>(i)]; }
  real phi_face(int i) const { return phi_face_[static_cast<size_t>(i)]; }
  real w_face(int i) const { return w_face_[static_cast<size_t>(i)]; }

  /// W(s) = r^2 dPhi/dr evaluated inside cell j.
  real w_value(int j, real r) const;

  /// d/dr (r^2 dPhi/dr) = W'(s); equals 4 pi G rho r^2 identically.
  real w_derivative(int j, real r) const;

  bool has_phi() const { return !phi_face_.empty(); }

  friend GravityField solve_gravity(const DGField&, real, const GravityAnchors&, bool);

 private:
  const Mesh* mesh_ = nullptr;
  int stride_ = 0;  // coefficients per cell in w_
  std::vector<real> w_;       // per cell, W(s) coefficients (degree k+3)
  std::vector<real> dpoly_;   // per cell, polynomial part of D for the r_left = 0 cell
  std::vector<real> v_;       // per cell, V(s) coefficients (degree k+2)
  std::vector<real> w_face_, dphi_face_, phi_face_;
};

GravityField solve_gravity(const DGField& rho, real g_newton,
                           const GravityAnchors& anchors = {}, bool dphi_only = false);

}  // namespace sphdg
