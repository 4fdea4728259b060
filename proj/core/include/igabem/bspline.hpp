#pragma once

#include <Eigen/Dense>

#include "igabem/knot_vector.hpp"

namespace igabem {

/// Nonzero B-spline values at a point: entries for basis indices
/// span-degree ... span.
struct BasisValues {
  int span = 0;
  Eigen::VectorXd values;
};

/// Cox-de Boor evaluation of the degree+1 nonzero basis functions at t.
/// Throws DomainError for t outside the knot range.
BasisValues eval_basis(const KnotVector& kv, double t);

/// Same as eval_basis but for t possibly outside the knot range: the end-span
/// polynomial pieces are extended.  Values are then unconstrained (no
/// partition of unity).
BasisValues eval_basis_extended(const KnotVector& kv, double t);

/// Derivatives of the nonzero basis functions.  Row r of the returned
/// (nder+1) x (degree+1) matrix holds the r-th derivatives; the span is the
/// same as eval_basis would report.  With `extended`, t may lie outside the
/// knot range.
struct BasisDerivatives {
  int span = 0;
  Eigen::MatrixXd ders;  // (nder+1) x (degree+1)
};
BasisDerivatives eval_basis_derivatives(const KnotVector& kv, double t, int nder,
                                        bool extended = false);

/// Value of the single basis function B_{i} at t (zero outside its support).
double eval_one_basis(const KnotVector& kv, int i, double t, bool extended = false);

/// Derivatives 0..nder of the single basis function B_{i} at t.
Eigen::VectorXd eval_one_basis_derivatives(const KnotVector& kv, int i, double t, int nder,
                                           bool extended = false);

/// Exact integral of B_{i} over its support: |supp| / (degree+1).
double bspline_integral(const KnotVector& kv, int i);

/// de Boor-Fix dual functional: recovers the i-th B-spline coefficient of a
/// spline from its derivatives f^(0..p) taken at a point tau strictly inside
/// a knot span contained in the support of B_{i}.
double deboor_fix(const KnotVector& kv, int i, double tau, const Eigen::VectorXd& derivs_at_tau);

/// Coefficients c of the de Boor-Fix functional: lambda_i(f) = sum_r c[r] f^(r)(tau).
Eigen::VectorXd deboor_fix_weights(const KnotVector& kv, int i, double tau);

}  // namespace igabem
