#pragma once

#include "igabem/kernel_expansion.hpp"
#include "igabem/product_space.hpp"

namespace igabem {

/// Exact integral of R(z)^(-beta) z1^a z2^b over an axis-aligned cell in the
/// local z coordinates; the cell may contain the (integrable) singular point
/// z = 0.  R(z) = sqrt(z^T M z) with M symmetric positive definite and the
/// total exponent satisfies a+b+2-beta >= 1.
///
/// Cells touching the origin are decomposed into origin-apex triangles and
/// integrated in closed form (1D antiderivative recurrences); well-separated
/// cells use fixed-order Gauss quadrature, which is where the closed forms
/// would lose digits to cancellation.
double homogeneous_cell_integral(const Mat2& metric, int a, int b, int beta, const Rect& zcell);

/// Basic moment: integral over a parameter cell (t coordinates) of
/// U_s^m(s-t) (t1-s1)^q1 (t2-s2)^q2.
double basic_moment(const KernelExpansion& exp, const Rect& tcell, const Vec2& s, int q1, int q2);

/// Moments of U_s^m(s-t) against every product-basis function
/// B_{k1}(t1) B_{k2}(t2) on the support, via the Cox-de Boor degree recursion
/// down to the basic moments.  Row k1, column k2.
Eigen::MatrixXd product_moments(const KernelExpansion& exp, const KnotVector& prod_knots1,
                                const KnotVector& prod_knots2, const Vec2& s);

}  // namespace igabem
