#include "sphdg/gravity.hpp"

#include <cmath>
#include <stdexcept>

namespace sphdg {

namespace {

real horner(const real* c, int n, real s) {
  real v = 0;
  for (int i = n - 1; i >= 0; --i) v = v * s + c[i];
  return v;
}

}  // namespace

real GravityField::w_value(int j, real r) const {
  const real s = r - mesh_->face(j);
  return horner(w_.data() + static_cast<size_t>(j) * stride_, stride_, s);
}

real GravityField::w_derivative(int j, real r) const {
  const real s = r - mesh_->face(j);
  const real* c = w_.data() + static_cast<size_t>(j) * stride_;
  real v = 0;
  for (int i = stride_ - 1; i >= 1; --i) v = v * s + real(i) * c[i];
  return v;
}

real GravityField::dphi(int j, real r) const {
  if (r == 0) return 0;
  return w_value(j, r) / (r * r);
}

real GravityField::dphi(real r) const { return dphi(mesh_->locate(r), r); }

real GravityField::phi(int j, real r) const {
  const real rl = mesh_->face(j);
  const real s = r - rl;
  real d, d0;
  if (rl == 0) {
    d = horner(dpoly_.data() + static_cast<size_t>(j) * stride_, stride_, s);
    d0 = 0;
  } else {
    const real v = horner(v_.data() + static_cast<size_t>(j) * stride_, stride_, s);
    d = v - w_value(j, r) / r;
    d0 = -w_face(j) / rl;
  }
  return phi_face(j) + d - d0;
}

real GravityField::phi(real r) const { return phi(mesh_->locate(r), r); }

GravityField solve_gravity(const DGField& rho, real g_newton,
                           const GravityAnchors& anchors, bool dphi_only) {
  const DGSpace& space = rho.space();
  const Mesh& mesh = space.mesh();
  const int n = mesh.n_cells();
  const int k = space.degree();

  GravityField gf;
  gf.mesh_ = &mesh;
  gf.stride_ = k + 4;
  gf.w_.assign(static_cast<size_t>(n) * gf.stride_, 0);
  gf.v_.assign(static_cast<size_t>(n) * gf.stride_, 0);
  gf.dpoly_.assign(static_cast<size_t>(n) * gf.stride_, 0);
  gf.w_face_.resize(static_cast<size_t>(n) + 1);
  gf.dphi_face_.resize(static_cast<size_t>(n) + 1);

  if (mesh.r_min() == 0 && anchors.m_inner != 0)
    throw std::invalid_argument("solve_gravity: m_inner must vanish at r = 0");

  const real four_pi_g = 4 * pi * g_newton;

  // outward sweep: W(s) = m_left + 4 pi G int_0^s rho(sigma) (r_left+sigma)^2 dsigma
  real m_left = anchors.m_inner;
  gf.w_face_[0] = m_left;
  for (int j = 0; j < n; ++j) {
    const real rl = mesh.face(j);
    const std::vector<real> c = to_local_monomial(rho, j);
    real* w = gf.w_.data() + static_cast<size_t>(j) * gf.stride_;
    real* v = gf.v_.data() + static_cast<size_t>(j) * gf.stride_;
    real* dp = gf.dpoly_.data() + static_cast<size_t>(j) * gf.stride_;
    w[0] = m_left;
    for (int m = 0; m <= k; ++m) {
      const real cm = four_pi_g * c[static_cast<size_t>(m)];
      w[m + 1] += cm * rl * rl / (m + 1);
      w[m + 2] += cm * 2 * rl / (m + 2);
      w[m + 3] += cm / (m + 3);
      v[m + 1] += cm * rl / (m + 1);
      v[m + 2] += cm / (m + 2);
      if (rl == 0) dp[m + 2] = cm / real((m + 2) * (m + 3));
    }
    m_left = horner(w, gf.stride_, mesh.width(j));
    gf.w_face_[static_cast<size_t>(j) + 1] = m_left;
  }
  for (int i = 0; i <= n; ++i) {
    const real rf = mesh.face(i);
    gf.dphi_face_[static_cast<size_t>(i)] = rf > 0 ? gf.w_face_[static_cast<size_t>(i)] / (rf * rf) : real(0);
  }

  if (dphi_only) return gf;

  // Phi sweep: per-cell increment D(dr) - D(0), anchored at one face
  std::vector<real> dphi_cell(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    const real rl = mesh.face(j);
    const real dr = mesh.width(j);
    real d1, d0;
    if (rl == 0) {
      d1 = horner(gf.dpoly_.data() + static_cast<size_t>(j) * gf.stride_, gf.stride_, dr);
      d0 = 0;
    } else {
      const real v1 = horner(gf.v_.data() + static_cast<size_t>(j) * gf.stride_, gf.stride_, dr);
      d1 = v1 - gf.w_face_[static_cast<size_t>(j) + 1] / (rl + dr);
      d0 = -gf.w_face_[static_cast<size_t>(j)] / rl;
    }
    dphi_cell[static_cast<size_t>(j)] = d1 - d0;
  }

  gf.phi_face_.resize(static_cast<size_t>(n) + 1);
  if (anchors.phi_at_inner) {
    gf.phi_face_[0] = anchors.phi_value;
    for (int j = 0; j < n; ++j)
      gf.phi_face_[static_cast<size_t>(j) + 1] =
          gf.phi_face_[static_cast<size_t>(j)] + dphi_cell[static_cast<size_t>(j)];
  } else {
    gf.phi_face_[static_cast<size_t>(n)] = anchors.phi_value;
    for (int j = n - 1; j >= 0; --j)
      gf.phi_face_[static_cast<size_t>(j)] =
          gf.phi_face_[static_cast<size_t>(j) + 1] - dphi_cell[static_cast<size_t>(j)];
  }
  return gf;
}

}  // namespace sphdg
