#pragma once

#include <iosfwd>

#include "igabem/discretization.hpp"
#include "igabem/problems.hpp"
#include "igabem/quadrature.hpp"

namespace igabem {

struct AssemblyOptions {
  QuadratureParams quad;
  double omega = 0.5;  // improved-Greville shift for discontinuous spaces
  int threads = 0;
  bool jump_term = true;  // the 1/2 I contribution of the Neumann operator
};

struct SolveStats {
  double residual = 0.0;
  double cond_estimate = 0.0;
  bool ill_conditioned = false;
};

/// Dense collocation system A alpha = beta with its point set.
struct CollocationSystem {
  MatrixXc A;
  VectorXc beta;
  std::vector<CollocationPoint> points;
  VectorXc alpha;
  SolveStats stats;
};

/// Assembles the collocation system for the problem on the given space:
/// the Neumann operator (K + I/2) or the Dirichlet single-layer operator V,
/// with every entry routed through the regular / nearly singular / singular
/// quadrature paths on the scaled patches.
CollocationSystem assemble(const BoundaryProblem& problem, const DiscretizationSpace& space,
                           const AssemblyOptions& options = {});

/// Direct dense solve with row pivoting; fills alpha and the stats.  Emits an
/// ill-conditioning flag when the estimated condition number exceeds 1e12
/// (possible vicinity of a spurious frequency).
void solve(CollocationSystem& system);

/// Textual dump (row col re im per line) of A, then the rows "rhs i re im".
void dump_system(const CollocationSystem& system, std::ostream& out);

/// Gauss identity diagnostic: -int dG_0/dn_y dGamma at every collocation
/// point via the assembled kappa = 0 double-layer rows (solid-outward
/// normal); equals 1/2 for a smooth closed surface.
Eigen::VectorXd c_coefficient_diagnostic(const DiscretizationSpace& space,
                                         const AssemblyOptions& options = {});

}  // namespace igabem
