#include "igabem/special_functions.hpp"

#include <cmath>

namespace igabem {

double spherical_bessel_j(int n, double x) {
  if (n < 0) throw DomainError("spherical_bessel_j: order must be nonnegative");
  if (x == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::sph_bessel(static_cast<unsigned>(n), x);
}

namespace {
double spherical_neumann(int n, double x) {
  return std::sph_neumann(static_cast<unsigned>(n), x);
}
}  // namespace

Complex spherical_hankel_h1(int n, double x) {
  if (!(x > 0.0)) throw DomainError("spherical_hankel_h1: requires x > 0");
  if (n < 0) throw DomainError("spherical_hankel_h1: order must be nonnegative");
  return {spherical_bessel_j(n, x), spherical_neumann(n, x)};
}

double spherical_bessel_j_deriv(int n, double x) {
  if (n == 0) return -spherical_bessel_j(1, x);
  return spherical_bessel_j(n - 1, x) - (n + 1) / x * spherical_bessel_j(n, x);
}

Complex spherical_hankel_h1_deriv(int n, double x) {
  if (n == 0) {
    const Complex h1 = spherical_hankel_h1(1, x);
    return -h1;
  }
  return spherical_hankel_h1(n - 1, x) - (n + 1.0) / x * spherical_hankel_h1(n, x);
}

double legendre_p(int n, double x) { return std::legendre(static_cast<unsigned>(n), x); }

double legendre_p_deriv(int n, double x) {
  if (n == 0) return 0.0;
  const double denom = 1.0 - x * x;
  if (std::abs(denom) < 1e-12) {
    // P_n'(+-1) = (+-1)^(n+1) n (n+1) / 2
    const double sign = (x > 0.0) ? 1.0 : ((n + 1) % 2 == 0 ? 1.0 : -1.0);
    return sign * 0.5 * n * (n + 1.0);
  }
  return n * (legendre_p(n - 1, x) - x * legendre_p(n, x)) / denom;
}

}  // namespace igabem
