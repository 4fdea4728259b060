#pragma once

#include <optional>
#include <vector>

#include "igabem/spline_space.hpp"

namespace igabem {

/// First and second fundamental form coefficients at a parameter point, with
/// the second form taken against the non-normalized normal nu = F_1 x F_2.
struct FundamentalForms {
  double E = 0, F = 0, G = 0;  // first form
  double L = 0, M = 0, N = 0;  // second form (w.r.t. nu)
  Mat2 metric() const {
    Mat2 m;
    m << E, F, F, G;
    return m;
  }
};

/// Partial derivatives d^(a+b) F / dt1^a dt2^b for a+b <= order.
struct SurfaceJets {
  int order = 0;
  Vec3 d[5][5];
  const Vec3& operator()(int a, int b) const { return d[a][b]; }
};

/// Rational tensor-product surface patch on [0,1]^2.
///
/// Control points are stored row-major, index i1 * n2 + i2.  The geometry map
/// extends polynomially outside [0,1]^2 by `extension_margin` per side, which
/// is what the inter-patch singularity subtraction projects onto.
class NurbsPatch {
 public:
  NurbsPatch(KnotVector knots_u, KnotVector knots_v, std::vector<Vec3> control_points,
             std::vector<double> weights);

  const KnotVector& knots_u() const { return ku_; }
  const KnotVector& knots_v() const { return kv_; }
  int degree1() const { return ku_.degree(); }
  int degree2() const { return kv_.degree(); }
  int num1() const { return ku_.num_basis(); }
  int num2() const { return kv_.num_basis(); }
  const std::vector<Vec3>& control_points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

  double extension_margin() const { return margin_; }
  void set_extension_margin(double m) { margin_ = m; }

  /// Domain of the extended map.
  Rect extended_domain() const { return {-margin_, 1.0 + margin_, -margin_, 1.0 + margin_}; }

  Vec3 eval(double t1, double t2, bool extended = false) const;
  SurfaceJets eval_jets(double t1, double t2, int order, bool extended = false) const;

  /// Non-normalized normal nu = F_1 x F_2 and the area element J = |nu|.
  Vec3 normal(double t1, double t2, bool extended = false) const;
  double jacobian(double t1, double t2, bool extended = false) const;

  FundamentalForms fundamental_forms(double t1, double t2, bool extended = false) const;

  /// Axis-aligned bound of the patch piece over the parameter rectangle
  /// (convex hull of the active control points).
  Eigen::AlignedBox3d bounding_box(const Rect& r) const;

  /// Reverse the t2 direction (used to fix outward orientation).
  NurbsPatch flipped_v() const;

  /// Patch reference length mu (square root of area); set by the surface
  /// builder, 1 until then.
  double scale() const { return scale_; }
  void set_scale(double mu) { scale_ = mu; }

 private:
  KnotVector ku_, kv_;
  std::vector<Vec3> points_;
  std::vector<double> weights_;
  double margin_ = 0.1;
  double scale_ = 1.0;
};

/// Patch area by spline quadrature of the area element.
double patch_area(const NurbsPatch& patch, int cells_per_dir = 4, int qi_degree = 4,
                  int nodes_per_cell = 9);

/// One shared edge between two patches.  Edges are numbered 0: v=0, 1: u=1,
/// 2: v=1, 3: u=0 and parameterized by their free coordinate; `reversed`
/// states whether the second patch traverses the curve backwards.
struct InterfaceRecord {
  int patch_a = 0, edge_a = 0;
  int patch_b = 0, edge_b = 0;
  bool reversed = false;
};

/// Parameter point of edge `e` at edge coordinate w.
Vec2 edge_point(int e, double w);

/// Closed conforming multi-patch surface.
///
/// Construction detects interfaces by sampling edge curves (tolerance 1e-10),
/// verifies that every edge is shared by exactly one interface, that adjacent
/// normals are consistently oriented, and computes the per-patch scales.
class MultiPatchSurface {
 public:
  explicit MultiPatchSurface(std::vector<NurbsPatch> patches,
                             std::optional<std::vector<InterfaceRecord>> interfaces = std::nullopt);

  int num_patches() const { return static_cast<int>(patches_.size()); }
  const NurbsPatch& patch(int i) const { return patches_[static_cast<size_t>(i)]; }
  NurbsPatch& patch(int i) { return patches_[static_cast<size_t>(i)]; }
  const std::vector<InterfaceRecord>& interfaces() const { return interfaces_; }

  /// Interfaces touching the given patch.
  std::vector<InterfaceRecord> interfaces_of(int patch) const;

  /// Total surface area.
  double area() const { return area_; }

 private:
  std::vector<NurbsPatch> patches_;
  std::vector<InterfaceRecord> interfaces_;
  double area_ = 0.0;
};

/// Result of a closest-point search.
struct DistanceResult {
  double distance = 0.0;
  Vec2 t{0.0, 0.0};
};

/// Minimizes ||x - F(t)|| over the parameter rectangle R (coarse grid, then
/// damped projected Newton on the squared distance with a golden-section
/// fallback).  Distances are in unscaled physical units.
DistanceResult min_distance(const NurbsPatch& patch, const Rect& r, const Vec3& x);

/// Projection onto the extended patch: minimizes over the enlarged domain.
struct ProjectionResult {
  Vec2 s_e{0.0, 0.0};
  double residual = 0.0;
  bool unreliable = false;  // minimizer pinned to the extended boundary with a large residual
};
ProjectionResult project_to_extended_patch(const NurbsPatch& patch, const Vec3& x,
                                           const Vec2& init);

}  // namespace igabem
