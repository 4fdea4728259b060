#pragma once

#include "igabem/types.hpp"

namespace igabem {

/// Spherical Bessel function j_n(x).
double spherical_bessel_j(int n, double x);

/// Spherical Hankel function of the first kind h_n^(1)(x) = j_n + i y_n, x > 0.
Complex spherical_hankel_h1(int n, double x);

/// Derivatives with respect to the argument: f_n' = f_{n-1} - (n+1)/x f_n.
double spherical_bessel_j_deriv(int n, double x);
Complex spherical_hankel_h1_deriv(int n, double x);

/// Legendre polynomial P_n(x) and its derivative.
double legendre_p(int n, double x);
double legendre_p_deriv(int n, double x);

}  // namespace igabem
