#pragma once

#include <functional>
#include <span>
#include <vector>

#include "sphdg/mesh.hpp"
#include "sphdg/quadrature.hpp"
#include "sphdg/types.hpp"

namespace sphdg {

/// Discrete space shared by all fields of a run: mesh, polynomial degree,
/// quadrature rules, reference-basis tables and the factored r^2-weighted
/// mass matrix of every cell.
///
/// Basis: Legendre P_0..P_k on the reference coordinate x in [-1,1],
/// x = 2(r - r_mid)/dr. The volume rule is exact through degree 3k+4,
/// which covers every polynomial integrand assembled by the scheme
/// (the largest is drho * Phi * delta * r^2).
class DGSpace {
 public:
  DGSpace(Mesh mesh, int degree);

  const Mesh& mesh() const { return mesh_; }
  int degree() const { return k_; }
  int n_modes() const { return k_ + 1; }
  int n_cells() const { return mesh_.n_cells(); }

  const Quadrature& vol_quad() const { return *vol_quad_; }
  const Quadrature& proj_quad() const { return *proj_quad_; }

  // reference basis tables at volume quadrature nodes
  real basis(int q, int m) const { return phi_[static_cast<size_t>(q) * (k_ + 1) + m]; }
  real basis_deriv(int q, int m) const { return dphi_[static_cast<size_t>(q) * (k_ + 1) + m]; }

  real node_r(int j, int q) const {
    return mesh_.midpoint(j) + real(0.5) * mesh_.width(j) * vol_quad_->x[static_cast<size_t>(q)];
  }

  /// Solves M c = rhs for one cell, M_ab = int phi_a phi_b r^2 dr.
  void solve_mass(int j, const real* rhs, real* out) const;

  /// Weighted volume of cell j: int r^2 dr.
  real cell_volume(int j) const;

 private:
  Mesh mesh_;
  int k_;
  const Quadrature* vol_quad_;
  const Quadrature* proj_quad_;
  std::vector<real> phi_, dphi_;    // [q][m] at volume nodes
  std::vector<real> chol_;          // per cell, lower Cholesky factor of M
};

/// One scalar unknown as a piecewise polynomial: k+1 modal Legendre
/// coefficients per cell.
class DGField {
 public:
  DGField() = default;
  explicit DGField(const DGSpace* space);

  const DGSpace& space() const { return *space_; }

  real coeff(int j, int m) const { return c_[idx(j, m)]; }
  real& coeff(int j, int m) { return c_[idx(j, m)]; }
  std::span<const real> cell_coeffs(int j) const {
    return {c_.data() + idx(j, 0), static_cast<size_t>(space_->n_modes())};
  }

  real eval_local(int j, real x) const;
  real eval(real r) const;
  real deriv_local(int j, real x) const;  // d/dr

  /// One-sided values at the faces of cell j.
  real trace_inner(int j) const;  // at face(j), from inside cell j
  real trace_outer(int j) const;  // at face(j+1), from inside cell j

  std::vector<real>& data() { return c_; }
  const std::vector<real>& data() const { return c_; }

 private:
  size_t idx(int j, int m) const { return static_cast<size_t>(j) * space_->n_modes() + m; }
  const DGSpace* space_ = nullptr;
  std::vector<real> c_;
};

/// The conserved triple (rho, rho*u, E) advanced in time.
struct StateField {
  DGField rho, mom, ene;

  explicit StateField(const DGSpace* space) : rho(space), mom(space), ene(space) {}
  StateField() = default;

  const DGSpace& space() const { return rho.space(); }
};

/// Gauss-Radau projection of f onto cell j: matches the first k unweighted
/// moments and the value at the inner face. Requires k >= 1.
template <class F>
void project_cell(const DGSpace& space, int j, F&& f, real* coeffs) {
  const int k = space.degree();
  const Quadrature& quad = space.proj_quad();
  const real r_mid = space.mesh().midpoint(j);
  const real half = real(0.5) * space.mesh().width(j);

  std::vector<real> p(static_cast<size_t>(k) + 1);
  for (int m = 0; m < k; ++m) coeffs[m] = 0;
  for (int q = 0; q < quad.size(); ++q) {
    const real x = quad.x[static_cast<size_t>(q)];
    const real fv = f(r_mid + half * x);
    legendre(k, x, p.data());
    for (int m = 0; m < k; ++m)
      coeffs[m] += quad.w[static_cast<size_t>(q)] * fv * p[static_cast<size_t>(m)];
  }
  // orthogonality: int P_m^2 dx = 2/(2m+1)
  for (int m = 0; m < k; ++m) coeffs[m] *= real(0.5) * (2 * m + 1);

  // endpoint condition at the inner face, P_m(-1) = (-1)^m
  real sum = 0;
  for (int m = 0; m < k; ++m) sum += (m % 2 == 0 ? coeffs[m] : -coeffs[m]);
  const real target = f(space.mesh().face(j));
  coeffs[k] = (k % 2 == 0) ? (target - sum) : (sum - target);
}

DGField project_gauss_radau(const DGSpace& space, const std::function<real(real)>& f);

/// Coefficients of the cell-j polynomial in absolute powers of r.
std::vector<real> to_monomial(const DGField& f, int j);

/// Coefficients in powers of s = r - face(j); well conditioned at large radii.
std::vector<real> to_local_monomial(const DGField& f, int j);

/// int over cell j of g(r) r^2 dr with the space's volume rule.
template <class G>
real integrate_weighted(const DGSpace& space, int j, G&& g) {
  const Quadrature& quad = space.vol_quad();
  const real half = real(0.5) * space.mesh().width(j);
  real acc = 0;
  for (int q = 0; q < quad.size(); ++q) {
    const real r = space.node_r(j, q);
    acc += quad.w[static_cast<size_t>(q)] * g(r) * r * r;
  }
  return half * acc;
}

}  // namespace sphdg
