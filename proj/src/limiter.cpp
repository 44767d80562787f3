#include "sphdg/limiter.hpp"

#include <cmath>

namespace sphdg {

namespace {

real minmod(real a, real b, real c) {
  if (a > 0 && b > 0 && c > 0) return std::min({a, b, c});
  if (a < 0 && b < 0 && c < 0) return std::max({a, b, c});
  return 0;
}

struct VarView {
  const DGField* field;
  const DGField* equilibrium;  // nullptr when the decomposition is inactive

  real avg(int j) const {
    real v = field->coeff(j, 0);
    if (equilibrium) v -= equilibrium->coeff(j, 0);
    return v;
  }
  real trace_inner(int j) const {
    real v = field->trace_inner(j);
    if (equilibrium) v -= equilibrium->trace_inner(j);
    return v;
  }
  real trace_outer(int j) const {
    real v = field->trace_outer(j);
    if (equilibrium) v -= equilibrium->trace_outer(j);
    return v;
  }
};

// limited slope of one variable in cell j; flags[1] reports whether the
// minmod changed the interior slope
real limited_slope(const VarView& v, const Mesh& mesh, const LimiterConfig& cfg, int j,
                   bool* changed) {
  const int n = mesh.n_cells();
  const real interior = (v.trace_outer(j) - v.trace_inner(j)) / mesh.width(j);
  const real fwd = (j + 1 < n)
                       ? (v.avg(j + 1) - v.avg(j)) / (mesh.midpoint(j + 1) - mesh.midpoint(j))
                       : interior;
  const real bwd = (j > 0)
                       ? (v.avg(j) - v.avg(j - 1)) / (mesh.midpoint(j) - mesh.midpoint(j - 1))
                       : interior;
  if (cfg.tvb_m > 0 && std::abs(interior) <= cfg.tvb_m * mesh.width(j) * mesh.width(j)) {
    *changed = false;
    return interior;
  }
  const real limited = minmod(interior, cfg.beta * fwd, cfg.beta * bwd);
  *changed = (limited != interior);
  return limited;
}

real weighted_average(const DGField& f, int j) {
  const DGSpace& space = f.space();
  const Quadrature& quad = space.vol_quad();
  real num = 0;
  for (int q = 0; q < quad.size(); ++q) {
    const real r = space.node_r(j, q);
    num += quad.w[static_cast<size_t>(q)] * f.eval_local(j, quad.x[static_cast<size_t>(q)]) * r * r;
  }
  num *= real(0.5) * space.mesh().width(j);
  return num / space.cell_volume(j);
}

void rebuild_linear(DGField& f, int j, real slope) {
  const DGSpace& space = f.space();
  const Mesh& mesh = space.mesh();
  const real rc = mesh.midpoint(j);
  const real dr = mesh.width(j);
  const real wavg = weighted_average(f, j);
  // int (r - rc) r^2 dr / int r^2 dr over the cell
  const real shift = rc * dr * dr * dr / 6 / (dr * (rc * rc + dr * dr / 12));
  const real u0 = wavg - slope * shift;
  f.coeff(j, 0) = u0;
  f.coeff(j, 1) = slope * dr / 2;
  for (int m = 2; m < space.n_modes(); ++m) f.coeff(j, m) = 0;
}

}  // namespace

std::pair<real, real> cell_averages(const DGField& f, int j) {
  return {f.coeff(j, 0), weighted_average(f, j)};
}

std::vector<char> detect_and_limit(StateField& u, const EquilibriumDecomposition& decomp,
                                   const LimiterConfig& cfg) {
  const DGSpace& space = u.space();
  const Mesh& mesh = space.mesh();
  const int n = space.n_cells();
  std::vector<char> troubled(static_cast<size_t>(n), 0);
  if (!cfg.enabled) return troubled;

  const bool active = decomp.active();
  const VarView ind[3] = {{&u.rho, active ? &decomp.ue().rho : nullptr},
                          {&u.mom, active ? &decomp.ue().mom : nullptr},
                          {&u.ene, active ? &decomp.ue().ene : nullptr}};

  // u^e is already zero in masked cells, so the indicator u - u^e needs no
  // per-cell special casing
  for (int j = 0; j < n; ++j) {
    for (const VarView& v : ind) {
      bool changed = false;
      limited_slope(v, mesh, cfg, j, &changed);
      if (changed) {
        troubled[static_cast<size_t>(j)] = 1;
        break;
      }
    }
  }

  // snapshot of the pre-limit averages/traces feeding the neighbour slopes
  std::vector<real> avg_rho(static_cast<size_t>(n)), avg_mom(static_cast<size_t>(n)),
      avg_ene(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    avg_rho[static_cast<size_t>(j)] = u.rho.coeff(j, 0);
    avg_mom[static_cast<size_t>(j)] = u.mom.coeff(j, 0);
    avg_ene[static_cast<size_t>(j)] = u.ene.coeff(j, 0);
  }
  auto own_slope = [&](const DGField& f, const std::vector<real>& avg, int j) {
    const real interior = (f.trace_outer(j) - f.trace_inner(j)) / mesh.width(j);
    const real fwd = (j + 1 < n) ? (avg[static_cast<size_t>(j) + 1] - avg[static_cast<size_t>(j)]) /
                                       (mesh.midpoint(j + 1) - mesh.midpoint(j))
                                 : interior;
    const real bwd = (j > 0) ? (avg[static_cast<size_t>(j)] - avg[static_cast<size_t>(j) - 1]) /
                                   (mesh.midpoint(j) - mesh.midpoint(j - 1))
                             : interior;
    return minmod(interior, cfg.beta * fwd, cfg.beta * bwd);
  };

  for (int j = 0; j < n; ++j) {
    if (!troubled[static_cast<size_t>(j)]) continue;
    rebuild_linear(u.rho, j, own_slope(u.rho, avg_rho, j));
    rebuild_linear(u.mom, j, own_slope(u.mom, avg_mom, j));
    rebuild_linear(u.ene, j, own_slope(u.ene, avg_ene, j));
  }
  return troubled;
}

void energy_correction(DGField& ene, const DGField& rho_pre, const GravityField& phi_pre,
                       const DGField& rho_post, const GravityField& phi_post) {
  const DGSpace& space = ene.space();
  const Quadrature& quad = space.vol_quad();
  for (int j = 0; j < space.n_cells(); ++j) {
    real num = 0;
    for (int q = 0; q < quad.size(); ++q) {
      const real x = quad.x[static_cast<size_t>(q)];
      const real r = space.node_r(j, q);
      const real pre = rho_pre.eval_local(j, x) * phi_pre.phi(j, r);
      const real post = rho_post.eval_local(j, x) * phi_post.phi(j, r);
      num += quad.w[static_cast<size_t>(q)] * real(0.5) * (pre - post) * r * r;
    }
    num *= real(0.5) * space.mesh().width(j);
    ene.coeff(j, 0) += num / space.cell_volume(j);
  }
}

}  // namespace sphdg
