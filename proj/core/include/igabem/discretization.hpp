#pragma once

#include <vector>

#include "igabem/geometry.hpp"

namespace igabem {

enum class Continuity { discontinuous, c0 };
enum class DofClass { interior, edge, vertex };

/// One local tensor B-spline making up a global basis function.
struct DofConstituent {
  int patch = 0;
  int j1 = 0, j2 = 0;
};

/// A collocation point with every patch preimage it admits (host first).
struct CollocationPoint {
  Vec3 x;
  std::vector<std::pair<int, Vec2>> preimages;
  int host_patch() const { return preimages.front().first; }
  const Vec2& host_s() const { return preimages.front().second; }
};

/// Multi-patch spline discretization space: per-patch tensor-product spaces
/// glued with the requested continuity.  Global DOFs are ordered by their
/// lowest constituent (patches in input order, lexicographic within a patch).
class DiscretizationSpace {
 public:
  DiscretizationSpace(const MultiPatchSurface& surface,
                      std::vector<TensorSplineSpace> patch_spaces, Continuity continuity);

  /// Uniform n x n elements of bi-degree (d,d) on every patch.
  static DiscretizationSpace uniform(const MultiPatchSurface& surface, int degree,
                                     int elements_per_dir, Continuity continuity);

  /// Per-direction span counts (n1 elements along t1, n2 along t2).
  static DiscretizationSpace uniform_rect(const MultiPatchSurface& surface, int degree, int n1,
                                          int n2, Continuity continuity);

  const MultiPatchSurface& surface() const { return *surface_; }
  Continuity continuity() const { return continuity_; }
  int num_patches() const { return static_cast<int>(spaces_.size()); }
  const TensorSplineSpace& patch_space(int p) const { return spaces_[static_cast<size_t>(p)]; }

  int num_dofs() const { return static_cast<int>(dofs_.size()); }
  const std::vector<DofConstituent>& constituents(int dof) const {
    return dofs_[static_cast<size_t>(dof)];
  }
  DofClass dof_class(int dof) const {
    const size_t n = dofs_[static_cast<size_t>(dof)].size();
    return n == 1 ? DofClass::interior : (n == 2 ? DofClass::edge : DofClass::vertex);
  }
  int global_dof(int patch, int j1, int j2) const;

  /// Largest knot span over all patches and directions.
  double mesh_size() const;

  /// Value at a parameter point of one patch of the spline with the given
  /// global coefficients.
  Complex eval(const VectorXc& coeffs, int patch, double t1, double t2) const;

  /// Collocation points, one per DOF.  C0 spaces use standard Greville
  /// abscissas (repeated points counted once); discontinuous spaces use the
  /// improved Greville abscissas (plain span midpoints for degree 0).
  std::vector<CollocationPoint> collocation_points(double omega = 0.5) const;

 private:
  const MultiPatchSurface* surface_;
  std::vector<TensorSplineSpace> spaces_;
  Continuity continuity_;
  std::vector<std::vector<DofConstituent>> dofs_;  // global dof -> constituents
  std::vector<std::vector<int>> local_to_global_;  // per patch, flattened local index
  std::vector<int> patch_offset_;
};

}  // namespace igabem
