#pragma once

#include <vector>

#include "sphdg/types.hpp"

namespace sphdg {

/// 1D radial mesh over [r_min, R]. Cell j (0-based) spans
/// [face(j), face(j+1)]. The face list is stored explicitly so all
/// downstream geometry is derived from one array.
class Mesh {
 public:
  /// N equal cells on [r_min, r_outer].
  static Mesh uniform(real r_min, real r_outer, int n);

  /// Cell widths grow geometrically: width(j) = growth^j * dr1.
  /// The outer radius is r_min + dr1*(growth^N - 1)/(growth - 1).
  static Mesh geometric(real r_min, real dr1, real growth, int n);

  int n_cells() const { return static_cast<int>(faces_.size()) - 1; }
  real r_min() const { return faces_.front(); }
  real r_outer() const { return faces_.back(); }
  real face(int i) const { return faces_[static_cast<size_t>(i)]; }
  real width(int j) const { return face(j + 1) - face(j); }
  real midpoint(int j) const;
  real min_width() const;
  const std::vector<real>& faces() const { return faces_; }

  /// Index of the cell containing r (clamped to the domain).
  int locate(real r) const;

 private:
  explicit Mesh(std::vector<real> faces);
  std::vector<real> faces_;
};

}  // namespace sphdg
