#include "igabem/problems.hpp"

#include <cmath>

#include "igabem/special_functions.hpp"

namespace igabem {

namespace {
const Complex kI(0.0, 1.0);
}

BenchmarkProblem pulsating_sphere_problem(double kappa) {
  BenchmarkProblem bench;
  bench.problem.domain = DomainKind::exterior;
  bench.problem.bc = BcKind::neumann;
  bench.problem.kappa = kappa;
  const Complex eik = std::exp(kI * kappa);
  const Complex phi = eik / (4.0 * kPi);
  const Complex un_radial = eik * (kI * kappa - 1.0) / (4.0 * kPi);
  bench.problem.datum = [un_radial](const Vec3&, const Vec3&) { return un_radial; };
  bench.exact_phi = [phi](const Vec3&) { return phi; };
  bench.exact_field = [kappa](const Vec3& x) {
    const double r = x.norm();
    return std::exp(kI * kappa * r) / (4.0 * kPi * r);
  };
  bench.cauchy_u_from_phi_offset = [](const Vec3&) { return Complex(0.0, 0.0); };
  bench.cauchy_un = bench.problem.datum;
  bench.field_offset = [](const Vec3&) { return Complex(0.0, 0.0); };
  return bench;
}

Complex rigid_scattering_scattered_field(double kappa, double amplitude, const Vec3& direction,
                                         const Vec3& x, double radius) {
  const double r = x.norm();
  const double ct = (r > 0.0) ? x.dot(direction.normalized()) / r : 1.0;
  Complex sum = 0.0;
  Complex i_pow(1.0, 0.0);
  for (int n = 0; n <= 10; ++n) {
    const double jp = spherical_bessel_j_deriv(n, kappa * radius);
    const Complex hp = spherical_hankel_h1_deriv(n, kappa * radius);
    sum += i_pow * (2.0 * n + 1.0) * (jp / hp) * legendre_p(n, ct) *
           spherical_hankel_h1(n, kappa * r);
    i_pow *= kI;
  }
  return -amplitude * sum;
}

BenchmarkProblem rigid_scattering_problem(double kappa, double amplitude, const Vec3& direction) {
  BenchmarkProblem bench;
  bench.problem.domain = DomainKind::exterior;
  bench.problem.bc = BcKind::neumann;
  bench.problem.kappa = kappa;
  const Vec3 v = direction.normalized();
  auto p_inc = [kappa, amplitude, v](const Vec3& x) {
    return amplitude * std::exp(kI * kappa * v.dot(x));
  };
  bench.problem.datum = [](const Vec3&, const Vec3&) { return Complex(0.0, 0.0); };
  bench.problem.rhs_pointwise = p_inc;
  bench.exact_phi = [kappa, amplitude, v, p_inc](const Vec3& x) {
    return p_inc(x) + rigid_scattering_scattered_field(kappa, amplitude, v, x);
  };
  bench.exact_field = bench.exact_phi;
  // representation formula applies to the scattered part p = p_tot - p_inc
  bench.cauchy_u_from_phi_offset = p_inc;
  bench.cauchy_un = [kappa, amplitude, v, p_inc](const Vec3& x, const Vec3& n) {
    // d p / d n = i kappa (v.n) p_inc; the scattered part has the opposite sign
    return -kI * kappa * v.dot(n) * p_inc(x);
  };
  bench.field_offset = p_inc;
  return bench;
}

Vec3 torus_potential_gradient(double kappa, const Vec3& x) {
  const double a = kappa / std::sqrt(3.0);
  return Vec3(a * std::cos(a * x.x()) * std::sin(a * x.y()) * std::sin(a * x.z()),
              a * std::sin(a * x.x()) * std::cos(a * x.y()) * std::sin(a * x.z()),
              a * std::sin(a * x.x()) * std::sin(a * x.y()) * std::cos(a * x.z()));
}

BenchmarkProblem torus_interior_problem(double kappa) {
  BenchmarkProblem bench;
  bench.problem.domain = DomainKind::interior;
  bench.problem.bc = BcKind::neumann;
  bench.problem.kappa = kappa;
  auto phi = [kappa](const Vec3& x) {
    const double a = kappa / std::sqrt(3.0);
    return Complex(std::sin(a * x.x()) * std::sin(a * x.y()) * std::sin(a * x.z()), 0.0);
  };
  bench.problem.datum = [kappa](const Vec3& x, const Vec3& n) {
    return Complex(torus_potential_gradient(kappa, x).dot(n), 0.0);
  };
  bench.exact_phi = phi;
  bench.exact_field = phi;
  bench.cauchy_u_from_phi_offset = [](const Vec3&) { return Complex(0.0, 0.0); };
  bench.cauchy_un = bench.problem.datum;
  bench.field_offset = [](const Vec3&) { return Complex(0.0, 0.0); };
  return bench;
}

}  // namespace igabem
