#include "igabem/kernels.hpp"

#include <cmath>

namespace igabem {

namespace {
// series switch for the removable factors; u = kappa*r
constexpr double kSeriesThreshold = 1e-3;
}

Complex sl_kernel(double kappa, double r) {
  if (!(r > 0.0)) throw DomainError("sl_kernel: r must be positive (route via extraction)");
  const double u = kappa * r;
  return Complex(std::cos(u), std::sin(u)) / (4.0 * kPi * r);
}

Complex dl_kernel(double kappa, const Vec3& r_vec, const Vec3& nu, bool unit_normal) {
  const double r = r_vec.norm();
  if (!(r > 0.0)) throw DomainError("dl_kernel: r must be positive (route via extraction)");
  const double rn = r_vec.dot(unit_normal ? Vec3(nu.normalized()) : nu);
  const double re = rn / (r * r * r) * dl_real_cofactor(kappa, r);
  const double im = rn / (r * r) * dl_imag_cofactor(kappa, r);
  return Complex(re, im) / (4.0 * kPi);
}

double sl_real_cofactor(double kappa, double r) { return std::cos(kappa * r); }

double sl_imag_smooth(double kappa, double r) {
  const double u = kappa * r;
  if (std::abs(u) < kSeriesThreshold) {
    const double u2 = u * u;
    return kappa * (1.0 - u2 / 6.0 * (1.0 - u2 / 20.0));
  }
  return std::sin(u) / r;
}

double dl_real_cofactor(double kappa, double r) {
  const double u = kappa * r;
  return std::cos(u) + u * std::sin(u);
}

double dl_imag_cofactor(double kappa, double r) {
  const double u = kappa * r;
  if (std::abs(u) < kSeriesThreshold) {
    const double u2 = u * u;
    // sin(u)/u - cos(u) = u^2/3 - u^4/30 + u^6/840 - ...
    return kappa * u2 * (1.0 / 3.0 - u2 / 30.0 * (1.0 - u2 / 28.0));
  }
  return std::sin(u) / r - kappa * std::cos(u);
}

}  // namespace igabem
