#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "igabem/spline_space.hpp"

namespace igabem {

/// Univariate derivative-free spline quasi-interpolation on uniform
/// breakpoints of [0,1].
///
/// The operator projects point samples onto a spline space of degree p whose
/// knots sit at every second breakpoint.  Each coefficient is produced by a
/// banded local reconstruction (least-squares collocation on a window of
/// spans, then the de Boor-Fix functional), which makes the scheme exact on
/// the whole spline space while using function values only.
class QiOperator1D {
 public:
  QiOperator1D(int degree, int num_breakpoints);

  int degree() const { return p_; }
  int num_breakpoints() const { return nu_; }
  int dim() const { return static_cast<int>(weights_.cols()); }

  /// Lambda = weights()^T f for a sample vector f at the breakpoints.
  const Eigen::MatrixXd& weights() const { return weights_; }

  /// Knots of the QI spline space mapped onto [a,b].
  KnotVector knots_on(double a, double b) const;

  /// Uniform breakpoints mapped onto [a,b].
  std::vector<double> breakpoints_on(double a, double b) const;

  /// Process-wide cache, keyed by (degree, num_breakpoints); thread-safe
  /// (concurrent readers, exclusive insert).
  static std::shared_ptr<const QiOperator1D> cached(int degree, int num_breakpoints);

 private:
  int p_, nu_;
  std::vector<double> knot_breaks_;  // span breakpoints, normalized to [0,1]
  Eigen::MatrixXd weights_;          // nu x dim
};

/// Tensor-product derivative-free quasi-interpolation operator on a rectangle.
class QiOperator {
 public:
  QiOperator(int p1, int p2, int nu1, int nu2, Rect domain);

  const QiOperator1D& op1() const { return *op1_; }
  const QiOperator1D& op2() const { return *op2_; }
  const Rect& domain() const { return domain_; }
  int num_samples() const { return op1_->num_breakpoints() * op2_->num_breakpoints(); }
  int dim() const { return op1_->dim() * op2_->dim(); }

  KnotVector knots1() const { return op1_->knots_on(domain_.a1, domain_.b1); }
  KnotVector knots2() const { return op2_->knots_on(domain_.a2, domain_.b2); }

  /// Sample points (t1,t2) in lexicographic order, first index major.
  std::vector<Vec2> sample_points() const;

  /// Coefficient grid Lambda = W1^T F W2 from the sample grid F (nu1 x nu2).
  Eigen::MatrixXd apply_grid(const Eigen::MatrixXd& samples) const;

  /// Flattened real/complex application (lexicographic vectors).
  Eigen::VectorXd apply(const Eigen::VectorXd& samples) const;
  VectorXc apply(const VectorXc& samples) const;

 private:
  std::shared_ptr<const QiOperator1D> op1_, op2_;
  Rect domain_;
};

}  // namespace igabem
