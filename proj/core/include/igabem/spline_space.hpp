#pragma once

#include <array>
#include <utility>

#include "igabem/bspline.hpp"

namespace igabem {

/// Axis-aligned parameter rectangle [a1,b1] x [a2,b2].
struct Rect {
  double a1 = 0.0, b1 = 1.0, a2 = 0.0, b2 = 1.0;
  double size1() const { return b1 - a1; }
  double size2() const { return b2 - a2; }
  bool contains(double t1, double t2, double tol = 0.0) const {
    return t1 >= a1 - tol && t1 <= b1 + tol && t2 >= a2 - tol && t2 <= b2 + tol;
  }
};

/// Tensor-product B-spline space on [0,1]^2 with bi-degree (d1,d2).
/// Basis indices (j1,j2) are flattened lexicographically, j1 major.
class TensorSplineSpace {
 public:
  TensorSplineSpace(KnotVector knots_u, KnotVector knots_v)
      : u_(std::move(knots_u)), v_(std::move(knots_v)) {}

  const KnotVector& u() const { return u_; }
  const KnotVector& v() const { return v_; }
  int degree1() const { return u_.degree(); }
  int degree2() const { return v_.degree(); }
  int num_basis1() const { return u_.num_basis(); }
  int num_basis2() const { return v_.num_basis(); }
  int dimension() const { return num_basis1() * num_basis2(); }

  int flatten(int j1, int j2) const { return j1 * num_basis2() + j2; }
  std::pair<int, int> unflatten(int j) const { return {j / num_basis2(), j % num_basis2()}; }

  /// Support rectangle of basis function (j1,j2).
  Rect support(int j1, int j2) const {
    return {u_[j1], u_[j1 + degree1() + 1], v_[j2], v_[j2 + degree2() + 1]};
  }

  /// Value of basis function (j1,j2) at (t1,t2).
  double eval_one(int j1, int j2, double t1, double t2) const {
    return eval_one_basis(u_, j1, t1) * eval_one_basis(v_, j2, t2);
  }

  /// Exact integral of basis function (j1,j2) over its support.
  double basis_integral(int j1, int j2) const {
    return bspline_integral(u_, j1) * bspline_integral(v_, j2);
  }

 private:
  KnotVector u_, v_;
};

}  // namespace igabem
