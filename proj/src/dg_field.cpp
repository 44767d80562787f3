#include "sphdg/dg_field.hpp"

#include <cmath>
#include <stdexcept>

namespace sphdg {

namespace {

// lower Cholesky of a dense SPD matrix, in place
void cholesky(int n, real* a) {
  for (int i = 0; i < n; ++i) {
    for (int jcol = 0; jcol <= i; ++jcol) {
      real s = a[i * n + jcol];
      for (int m = 0; m < jcol; ++m) s -= a[i * n + m] * a[jcol * n + m];
      if (i == jcol) {
        if (!(s > 0)) throw std::runtime_error("DGSpace: mass matrix not SPD");
        a[i * n + i] = std::sqrt(s);
      } else {
        a[i * n + jcol] = s / a[jcol * n + jcol];
      }
    }
  }
}

}  // namespace

DGSpace::DGSpace(Mesh mesh, int degree) : mesh_(std::move(mesh)), k_(degree) {
  if (k_ < 1) throw std::invalid_argument("DGSpace: polynomial degree must be >= 1");
  // exact through degree 3k+4 (largest assembled integrand)
  vol_quad_ = &Quadrature::gauss((3 * k_ + 6) / 2);
  proj_quad_ = &Quadrature::gauss(k_ + 6);

  const int nm = k_ + 1;
  const int nq = vol_quad_->size();
  phi_.resize(static_cast<size_t>(nq) * nm);
  dphi_.resize(static_cast<size_t>(nq) * nm);
  for (int q = 0; q < nq; ++q)
    legendre_deriv(k_, vol_quad_->x[static_cast<size_t>(q)],
                   phi_.data() + static_cast<size_t>(q) * nm,
                   dphi_.data() + static_cast<size_t>(q) * nm);

  const int n = mesh_.n_cells();
  chol_.assign(static_cast<size_t>(n) * nm * nm, 0);
  std::vector<real> m(static_cast<size_t>(nm) * nm);
  for (int j = 0; j < n; ++j) {
    std::fill(m.begin(), m.end(), real(0));
    const real half = real(0.5) * mesh_.width(j);
    for (int q = 0; q < nq; ++q) {
      const real r = node_r(j, q);
      const real wr2 = vol_quad_->w[static_cast<size_t>(q)] * r * r * half;
      for (int a = 0; a < nm; ++a)
        for (int b = 0; b <= a; ++b)
          m[static_cast<size_t>(a) * nm + b] += wr2 * basis(q, a) * basis(q, b);
    }
    for (int a = 0; a < nm; ++a)
      for (int b = a + 1; b < nm; ++b)
        m[static_cast<size_t>(a) * nm + b] = m[static_cast<size_t>(b) * nm + a];
    cholesky(nm, m.data());
    std::copy(m.begin(), m.end(), chol_.begin() + static_cast<size_t>(j) * nm * nm);
  }
}

void DGSpace::solve_mass(int j, const real* rhs, real* out) const {
  const int nm = k_ + 1;
  const real* l = chol_.data() + static_cast<size_t>(j) * nm * nm;
  // forward then back substitution with L L^T
  for (int i = 0; i < nm; ++i) {
    real s = rhs[i];
    for (int m = 0; m < i; ++m) s -= l[i * nm + m] * out[m];
    out[i] = s / l[i * nm + i];
  }
  for (int i = nm - 1; i >= 0; --i) {
    real s = out[i];
    for (int m = i + 1; m < nm; ++m) s -= l[m * nm + i] * out[m];
    out[i] = s / l[i * nm + i];
  }
}

real DGSpace::cell_volume(int j) const {
  const real a = mesh_.face(j), b = mesh_.face(j + 1);
  return (b * b * b - a * a * a) / real(3);
}

DGField::DGField(const DGSpace* space)
    : space_(space),
      c_(static_cast<size_t>(space->n_cells()) * space->n_modes(), real(0)) {}

real DGField::eval_local(int j, real x) const {
  const int k = space_->degree();
  real p[16];
  legendre(k, x, p);
  real v = 0;
  for (int m = 0; m <= k; ++m) v += coeff(j, m) * p[m];
  return v;
}

real DGField::deriv_local(int j, real x) const {
  const int k = space_->degree();
  real p[16], dp[16];
  legendre_deriv(k, x, p, dp);
  real v = 0;
  for (int m = 0; m <= k; ++m) v += coeff(j, m) * dp[m];
  return v * real(2) / space_->mesh().width(j);
}

real DGField::eval(real r) const {
  const Mesh& mesh = space_->mesh();
  if (r < mesh.r_min() || r > mesh.r_outer())
    throw std::out_of_range("DGField::eval: r outside the mesh");
  const int j = mesh.locate(r);
  const real x = (r - mesh.midpoint(j)) / (real(0.5) * mesh.width(j));
  return eval_local(j, x);
}

real DGField::trace_inner(int j) const {
  real v = 0;
  for (int m = 0; m <= space_->degree(); ++m)
    v += (m % 2 == 0) ? coeff(j, m) : -coeff(j, m);
  return v;
}

real DGField::trace_outer(int j) const {
  real v = 0;
  for (int m = 0; m <= space_->degree(); ++m) v += coeff(j, m);
  return v;
}

DGField project_gauss_radau(const DGSpace& space, const std::function<real(real)>& f) {
  DGField out(&space);
  for (int j = 0; j < space.n_cells(); ++j)
    project_cell(space, j, f, &out.coeff(j, 0));
  return out;
}

namespace {

// coefficients of P(a*t + b) in powers of t, given coefficients of P(x)
std::vector<real> compose_affine(const std::vector<real>& p, real a, real b) {
  std::vector<real> out{0};
  for (size_t i = p.size(); i-- > 0;) {
    // out = out*(a t + b) + p[i]
    std::vector<real> next(out.size() + 1, 0);
    for (size_t m = 0; m < out.size(); ++m) {
      next[m + 1] += a * out[m];
      next[m] += b * out[m];
    }
    next[0] += p[i];
    out = std::move(next);
  }
  out.resize(p.size());
  return out;
}

std::vector<real> cell_poly(const DGField& f, int j, real a, real b) {
  const int k = f.space().degree();
  std::vector<real> out(static_cast<size_t>(k) + 1, 0);
  for (int m = 0; m <= k; ++m) {
    const std::vector<real> pm = compose_affine(legendre_coeffs(m), a, b);
    for (size_t i = 0; i < pm.size(); ++i) out[i] += f.coeff(j, m) * pm[i];
  }
  return out;
}

}  // namespace

std::vector<real> to_monomial(const DGField& f, int j) {
  const Mesh& mesh = f.space().mesh();
  // x = (2 r - (r_l + r_r)) / dr
  const real a = real(2) / mesh.width(j);
  const real b = -(mesh.face(j) + mesh.face(j + 1)) / mesh.width(j);
  return cell_poly(f, j, a, b);
}

std::vector<real> to_local_monomial(const DGField& f, int j) {
  // x = 2 s / dr - 1
  const real a = real(2) / f.space().mesh().width(j);
  return cell_poly(f, j, a, real(-1));
}

}  // namespace sphdg
