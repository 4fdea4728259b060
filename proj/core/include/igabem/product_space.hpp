#pragma once

#include <Eigen/Dense>

#include "igabem/knot_vector.hpp"

namespace igabem {

/// Univariate "product" spline space of degree p+d on the support [A,B] of a
/// trial B-spline of degree d, together with the coefficient matrix G that
/// expresses sigma * B_trial in the product basis: for a spline sigma with
/// coefficients Lambda in the QI space, the product coefficients are G^T Lambda.
struct ProductSpace1D {
  KnotVector knots;          // degree p+d, clamped on [A,B]
  Eigen::MatrixXd G;         // (QI dim) x (product dim)
  Eigen::VectorXd integrals; // exact integrals of the product basis functions
};

/// Builds the product space for one trial function.
///
/// `qi_knots`: knot vector of the quasi-interpolation space, clamped on the
/// trial support [A,B].  `trial_knots`/`trial_index`: the discretization knot
/// vector and the index of the trial B-spline whose support is [A,B].
ProductSpace1D make_product_space(const KnotVector& qi_knots, const KnotVector& trial_knots,
                                  int trial_index);

}  // namespace igabem
