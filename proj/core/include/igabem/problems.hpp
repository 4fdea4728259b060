#pragma once

#include <functional>

#include "igabem/types.hpp"

namespace igabem {

enum class DomainKind { interior, exterior };
enum class BcKind { dirichlet, neumann };

/// Helmholtz boundary value problem on a closed surface.
///
/// Conventions: the Neumann datum is given with respect to the geometric
/// (solid-outward) unit normal; all boundary integral operators are assembled
/// with the domain-outward normal, which for exterior problems points into
/// the obstacle.  `normal_sign` converts between the two.
struct BoundaryProblem {
  DomainKind domain = DomainKind::exterior;
  BcKind bc = BcKind::neumann;
  double kappa = 1.0;

  /// Boundary datum: u_D(x) or u_N(x, n) with n the solid-outward unit normal.
  std::function<Complex(const Vec3&, const Vec3&)> datum;

  /// When set, replaces the integral right-hand side by pointwise evaluation
  /// (the rigid-scattering form (K + I/2) phi = p_inc).
  std::function<Complex(const Vec3&)> rhs_pointwise;

  double normal_sign() const { return domain == DomainKind::interior ? 1.0 : -1.0; }
};

/// A benchmark problem with its closed-form reference data.
struct BenchmarkProblem {
  BoundaryProblem problem;
  /// Exact trace of the BEM unknown phi on the surface.
  std::function<Complex(const Vec3&)> exact_phi;
  /// Exact potential in the domain (for the scattering problem: the total
  /// pressure field).
  std::function<Complex(const Vec3&)> exact_field;
  /// Cauchy data of the field represented by the representation formula;
  /// u_n is given against the solid-outward normal.  For scattering these
  /// describe the scattered (radiating) part only.
  std::function<Complex(const Vec3&)> cauchy_u_from_phi_offset;  // subtracted from phi_h
  std::function<Complex(const Vec3&, const Vec3&)> cauchy_un;
  /// Field to add back after the representation formula (p_inc, or zero).
  std::function<Complex(const Vec3&)> field_offset;
};

/// Radiating sphere: Neumann datum e^{i kappa}(i kappa - 1)/(4 pi) against
/// the radial normal; exact trace phi = e^{i kappa}/(4 pi) on the unit sphere
/// and field e^{i kappa r}/(4 pi r).
BenchmarkProblem pulsating_sphere_problem(double kappa);

/// Plane wave of amplitude A travelling along v scattered by the rigid unit
/// sphere; the unknown is the total pressure trace.
BenchmarkProblem rigid_scattering_problem(double kappa, double amplitude = 1.0,
                                          const Vec3& direction = Vec3(1, 0, 0));

/// Exact scattered pressure series (orders 0..10).
Complex rigid_scattering_scattered_field(double kappa, double amplitude, const Vec3& direction,
                                         const Vec3& x, double radius = 1.0);

/// Interior torus problem with potential sin(kx/sqrt3) sin(ky/sqrt3) sin(kz/sqrt3).
BenchmarkProblem torus_interior_problem(double kappa);

/// Analytic gradient of the torus potential (for datum checks).
Vec3 torus_potential_gradient(double kappa, const Vec3& x);

}  // namespace igabem
