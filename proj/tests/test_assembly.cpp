#include <doctest.h>

#include <cmath>
#include <sstream>

#include "igabem/assembly.hpp"
#include "igabem/geometry_factories.hpp"

using namespace igabem;

namespace {

const MultiPatchSurface& sphere() {
  static MultiPatchSurface s = make_sphere();
  return s;
}

AssemblyOptions patch_test_options(int p, int m, int nq) {
  AssemblyOptions opts;
  opts.quad.p_regular = opts.quad.p_singular = opts.quad.p_regularized = p;
  opts.quad.nu_regular = opts.quad.nu_singular = opts.quad.nu_regularized = nq;
  opts.quad.extraction_order = m;
  opts.quad.threshold_c = 0.25;
  return opts;
}

}  // namespace

TEST_CASE("C0 space dimensions on the sphere") {
  CHECK(DiscretizationSpace::uniform(sphere(), 2, 5, Continuity::c0).num_dofs() == 218);
  CHECK(DiscretizationSpace::uniform(sphere(), 4, 3, Continuity::c0).num_dofs() == 218);
  const int expected[] = {98, 152, 218, 296, 386, 488, 602};
  for (int n = 1; n <= 7; ++n) {
    CHECK(DiscretizationSpace::uniform(sphere(), 4, n, Continuity::c0).num_dofs() == expected[n - 1]);
  }
  // discontinuous: plain sum of patch dimensions
  CHECK(DiscretizationSpace::uniform(sphere(), 2, 5, Continuity::discontinuous).num_dofs() ==
        6 * 7 * 7);
}

TEST_CASE("collocation points") {
  SUBCASE("discontinuous degree 0: knot-span midpoints, 16 per patch") {
    auto space = DiscretizationSpace::uniform(sphere(), 0, 4, Continuity::discontinuous);
    const auto pts = space.collocation_points();
    CHECK(pts.size() == 6 * 16);
    for (const auto& pt : pts) {
      REQUIRE(pt.preimages.size() == 1);
      const Vec2& s = pt.host_s();
      // midpoints of the 4x4 spans
      const double frac1 = s.x() * 4.0 - std::floor(s.x() * 4.0);
      CHECK(frac1 == doctest::Approx(0.5));
    }
  }
  SUBCASE("C0: one point per DOF, merged Greville images coincide") {
    auto space = DiscretizationSpace::uniform(sphere(), 2, 3, Continuity::c0);
    const auto pts = space.collocation_points();
    CHECK(static_cast<int>(pts.size()) == space.num_dofs());
    int edge_dofs = 0, vertex_dofs = 0;
    for (int dof = 0; dof < space.num_dofs(); ++dof) {
      if (space.dof_class(dof) == DofClass::edge) ++edge_dofs;
      if (space.dof_class(dof) == DofClass::vertex) ++vertex_dofs;
    }
    CHECK(vertex_dofs == 8);   // cube corners
    CHECK(edge_dofs == 12 * 3);  // 12 edges, n + d - 2 = 3 interior functions each
  }
  SUBCASE("improved Greville abscissas are strictly interior") {
    auto space = DiscretizationSpace::uniform(sphere(), 2, 3, Continuity::discontinuous);
    for (const auto& pt : space.collocation_points(0.5)) {
      CHECK(pt.host_s().x() > 0.0);
      CHECK(pt.host_s().x() < 1.0);
      CHECK(pt.host_s().y() > 0.0);
      CHECK(pt.host_s().y() < 1.0);
    }
  }
}

TEST_CASE("Laplace double-layer identities on the sphere") {
  auto space = DiscretizationSpace::uniform(sphere(), 0, 3, Continuity::discontinuous);
  AssemblyOptions opts = patch_test_options(2, 2, 9);

  SUBCASE("diagnostic c(x) equals 1/2") {
    const Eigen::VectorXd c = c_coefficient_diagnostic(space, opts);
    for (int i = 0; i < c.size(); ++i) CHECK(c[i] == doctest::Approx(0.5).epsilon(5e-3));
  }
  SUBCASE("exterior operator row sums give (K + 1/2 I) 1 = 1; jump toggles by 1/2") {
    BoundaryProblem prob;
    prob.domain = DomainKind::exterior;
    prob.bc = BcKind::neumann;
    prob.kappa = 0.0;
    prob.datum = [](const Vec3&, const Vec3&) { return Complex(0, 0); };
    prob.rhs_pointwise = [](const Vec3&) { return Complex(0, 0); };
    CollocationSystem with_jump = assemble(prob, space, opts);
    AssemblyOptions no_jump = opts;
    no_jump.jump_term = false;
    CollocationSystem without = assemble(prob, space, no_jump);
    const VectorXc ones = VectorXc::Ones(space.num_dofs());
    const VectorXc row_with = with_jump.A * ones;
    const VectorXc row_without = without.A * ones;
    for (int i = 0; i < space.num_dofs(); ++i) {
      CHECK(row_with[i].real() == doctest::Approx(1.0).epsilon(5e-3));
      CHECK(std::abs(row_with[i] - row_without[i] - Complex(0.5, 0.0)) < 1e-14);
      CHECK(std::isfinite(std::abs(with_jump.A.row(i).sum())));
    }
  }
}

TEST_CASE("dense solve") {
  SUBCASE("identity system") {
    CollocationSystem sys;
    sys.A = MatrixXc::Identity(4, 4);
    sys.beta = VectorXc::Zero(4);
    sys.beta[0] = 1.0;
    solve(sys);
    CHECK(std::abs(sys.alpha[0] - 1.0) < 1e-15);
    CHECK(sys.alpha.tail(3).norm() < 1e-15);
    CHECK(sys.stats.residual < 1e-14);
  }
  SUBCASE("2x2 complex system against hand elimination") {
    CollocationSystem sys;
    sys.A = MatrixXc(2, 2);
    sys.A << Complex(1, 1), Complex(2, -1), Complex(0, 3), Complex(1, 0);
    sys.beta = VectorXc(2);
    sys.beta << Complex(5, 0), Complex(2, 2);
    solve(sys);
    // x2 = (b2 - A21/A11 b1) / (A22 - A21 A12 / A11), then back substitution
    const Complex f = sys.A(1, 0) / sys.A(0, 0);
    const Complex x2 = (sys.beta[1] - f * sys.beta[0]) / (sys.A(1, 1) - f * sys.A(0, 1));
    const Complex x1 = (sys.beta[0] - sys.A(0, 1) * x2) / sys.A(0, 0);
    CHECK(std::abs(sys.alpha[0] - x1) < 1e-15);
    CHECK(std::abs(sys.alpha[1] - x2) < 1e-15);
  }
}

TEST_CASE("pulsating sphere patch test: exact trace nearly solves the system") {
  const double kappa = 1.0;
  auto bench = pulsating_sphere_problem(kappa);
  auto space = DiscretizationSpace::uniform(sphere(), 0, 4, Continuity::discontinuous);

  auto relative_residual = [&](int alpha) {
    AssemblyOptions opts = patch_test_options(2, 2, 12 * alpha + 1);
    CollocationSystem sys = assemble(bench.problem, space, opts);
    VectorXc phi(space.num_dofs());
    const auto pts = sys.points;
    for (int i = 0; i < space.num_dofs(); ++i) phi[i] = bench.exact_phi(pts[i].x);
    return (sys.A * phi - sys.beta).lpNorm<Eigen::Infinity>() /
           sys.beta.lpNorm<Eigen::Infinity>();
  };
  const double r1 = relative_residual(1);
  const double r2 = relative_residual(2);
  CHECK(r1 < 2e-3);
  CHECK(r2 < r1);
  CHECK(std::log2(r1 / r2) / std::log2(2.0) > 1.5);  // heading toward the order-3 slope
}

TEST_CASE("assembled solution is C0 across interfaces") {
  const double kappa = 1.0;
  auto bench = pulsating_sphere_problem(kappa);
  auto space = DiscretizationSpace::uniform(sphere(), 2, 2, Continuity::c0);
  AssemblyOptions opts = patch_test_options(2, 2, 7);
  CollocationSystem sys = assemble(bench.problem, space, opts);
  solve(sys);
  CHECK(sys.stats.residual < 1e-10);
  double phimax = 0.0, jump = 0.0;
  for (const auto& rec : sphere().interfaces()) {
    for (int k = 1; k < 10; ++k) {
      const double w = k / 10.0;
      const Vec2 ta = edge_point(rec.edge_a, w);
      const Vec2 tb = edge_point(rec.edge_b, rec.reversed ? 1.0 - w : w);
      const Complex va = space.eval(sys.alpha, rec.patch_a, ta.x(), ta.y());
      const Complex vb = space.eval(sys.alpha, rec.patch_b, tb.x(), tb.y());
      phimax = std::max(phimax, std::abs(va));
      jump = std::max(jump, std::abs(va - vb));
    }
  }
  CHECK(jump <= 1e-10 * phimax);
}

TEST_CASE("system dump format") {
  CollocationSystem sys;
  sys.A = MatrixXc(1, 1);
  sys.A << Complex(1.5, -2.0);
  sys.beta = VectorXc(1);
  sys.beta << Complex(0.25, 0.5);
  std::ostringstream out;
  dump_system(sys, out);
  CHECK(out.str() == "0 0 1.5 -2\nrhs 0 0.25 0.5\n");
}
