#include "sphdg/mesh.hpp"

#include <algorithm>
#include <stdexcept>

namespace sphdg {

Mesh::Mesh(std::vector<real> faces) : faces_(std::move(faces)) {
  for (size_t i = 1; i < faces_.size(); ++i) {
    if (!(faces_[i] > faces_[i - 1]))
      throw std::invalid_argument("Mesh: faces must be strictly increasing");
  }
}

Mesh Mesh::uniform(real r_min, real r_outer, int n) {
  if (n < 1) throw std::invalid_argument("Mesh::uniform: need at least one cell");
  if (!(r_outer > r_min) || r_min < 0)
    throw std::invalid_argument("Mesh::uniform: need r_outer > r_min >= 0");
  std::vector<real> faces(static_cast<size_t>(n) + 1);
  const real dr = (r_outer - r_min) / n;
  for (int i = 0; i <= n; ++i) faces[static_cast<size_t>(i)] = r_min + dr * i;
  faces.front() = r_min;
  faces.back() = r_outer;
  return Mesh(std::move(faces));
}

Mesh Mesh::geometric(real r_min, real dr1, real growth, int n) {
  if (n < 1) throw std::invalid_argument("Mesh::geometric: need at least one cell");
  if (!(dr1 > 0)) throw std::invalid_argument("Mesh::geometric: dr1 must be positive");
  if (growth < 1) throw std::invalid_argument("Mesh::geometric: growth rate must be >= 1");
  std::vector<real> faces(static_cast<size_t>(n) + 1);
  if (growth == 1) {
    for (int i = 0; i <= n; ++i) faces[static_cast<size_t>(i)] = r_min + dr1 * i;
  } else {
    // closed-form partial sums keep the face list monotone for any n
    faces[0] = r_min;
    for (int i = 1; i <= n; ++i)
      faces[static_cast<size_t>(i)] =
          r_min + dr1 * (std::pow(growth, real(i)) - real(1)) / (growth - real(1));
  }
  return Mesh(std::move(faces));
}

real Mesh::midpoint(int j) const {
  if (j < 0 || j >= n_cells()) throw std::out_of_range("Mesh::midpoint: cell index");
  return real(0.5) * (face(j) + face(j + 1));
}

real Mesh::min_width() const {
  real w = faces_[1] - faces_[0];
  for (int j = 1; j < n_cells(); ++j) w = std::min(w, width(j));
  return w;
}

int Mesh::locate(real r) const {
  auto it = std::upper_bound(faces_.begin(), faces_.end(), r);
  int j = static_cast<int>(it - faces_.begin()) - 1;
  return std::clamp(j, 0, n_cells() - 1);
}

}  // namespace sphdg
