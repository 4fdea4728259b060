#pragma once

#include <vector>

#include "igabem/geometry.hpp"

namespace igabem {

/// Homogeneous bivariate polynomial; coeffs[k] multiplies z1^(deg-k) z2^k.
struct HPoly {
  Eigen::VectorXd c;

  static HPoly zero(int deg) { return {Eigen::VectorXd::Zero(deg + 1)}; }
  int deg() const { return static_cast<int>(c.size()) - 1; }

  static double power(double b, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  }

  double eval(double z1, double z2) const {
    const int d = deg();
    double v = 0.0, z2k = 1.0;
    for (int k = 0; k <= d; ++k) {
      v += c[k] * power(z1, d - k) * z2k;
      z2k *= z2;
    }
    return v;
  }

  HPoly operator+(const HPoly& o) const {
    if (deg() != o.deg()) throw StructureError("HPoly: degree mismatch in +");
    return {c + o.c};
  }
  HPoly operator-(const HPoly& o) const {
    if (deg() != o.deg()) throw StructureError("HPoly: degree mismatch in -");
    return {c - o.c};
  }
  HPoly operator*(double a) const { return {a * c}; }
  HPoly operator*(const HPoly& o) const {
    HPoly r = zero(deg() + o.deg());
    for (int i = 0; i <= deg(); ++i)
      for (int j = 0; j <= o.deg(); ++j) r.c[i + j] += c[i] * o.c[j];
    return r;
  }
};

/// Vector-valued homogeneous polynomial (3 components of equal degree).
struct HPolyVec {
  HPoly x, y, z;

  static HPolyVec zero(int deg) { return {HPoly::zero(deg), HPoly::zero(deg), HPoly::zero(deg)}; }
  static HPolyVec constant(const Vec3& v) {
    HPolyVec r = zero(0);
    r.x.c[0] = v.x();
    r.y.c[0] = v.y();
    r.z.c[0] = v.z();
    return r;
  }
  HPolyVec operator+(const HPolyVec& o) const { return {x + o.x, y + o.y, z + o.z}; }
  HPoly dot(const HPolyVec& o) const { return x * o.x + y * o.y + z * o.z; }
  HPolyVec cross(const HPolyVec& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
};

/// One term R_s(z)^(-beta) P(z) of the truncated kernel expansion.
struct ExpansionTerm {
  int beta = 1;  // odd
  HPoly poly;
};

/// Truncated series U_s^m of a weakly singular kernel about the source
/// preimage s, in local coordinates z = s - t.  gamma = 0 for the single
/// layer (1/r) and 1 for the double layer ((r.nu)/r^3); the k-th term has
/// beta = 2(k+gamma)-1 and a homogeneous numerator of degree 3k+2gamma-3.
/// The 1/(4 pi) factor is NOT included.
struct KernelExpansion {
  int m = 1;
  int gamma = 0;
  Mat2 metric;  // M_s, SPD
  std::vector<ExpansionTerm> terms;

  double radial(const Vec2& z) const { return std::sqrt(z.dot(metric * z)); }

  double eval(const Vec2& z) const {
    const double R = radial(z);
    double v = 0.0;
    for (const auto& t : terms)
      v += t.poly.eval(z.x(), z.y()) / HPoly::power(R, t.beta);
    return v;
  }
};

/// Builds the expansion at s from the (mu-scaled, orientation-signed)
/// geometry jets.  m <= 3; jets of order m+1 are required.
KernelExpansion expand_kernel(const NurbsPatch& patch, const Vec2& s, int m, int gamma,
                              double normal_sign = 1.0, bool extended = false);

}  // namespace igabem
