#include "igabem/geometry_factories.hpp"

#include <cmath>

namespace igabem {

namespace {

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

// Product of two polynomials given by Bernstein coefficient grids; degrees add.
Eigen::MatrixXd bernstein_mul(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const int m1 = static_cast<int>(a.rows()) - 1, m2 = static_cast<int>(a.cols()) - 1;
  const int n1 = static_cast<int>(b.rows()) - 1, n2 = static_cast<int>(b.cols()) - 1;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m1 + n1 + 1, m2 + n2 + 1);
  for (int i1 = 0; i1 <= m1; ++i1)
    for (int j1 = 0; j1 <= n1; ++j1)
      for (int i2 = 0; i2 <= m2; ++i2)
        for (int j2 = 0; j2 <= n2; ++j2)
          c(i1 + j1, i2 + j2) += a(i1, i2) * b(j1, j2) *
                                 (binomial(m1, i1) * binomial(n1, j1) / binomial(m1 + n1, i1 + j1)) *
                                 (binomial(m2, i2) * binomial(n2, j2) / binomial(m2 + n2, i2 + j2));
  return c;
}

NurbsPatch apply_rotation(const NurbsPatch& p, const Eigen::Matrix3d& rot) {
  std::vector<Vec3> pts = p.control_points();
  for (auto& q : pts) q = rot * q;
  return NurbsPatch(p.knots_u(), p.knots_v(), std::move(pts), p.weights());
}

NurbsPatch oriented_outward(NurbsPatch p, const Vec3& interior_point) {
  const Vec3 f = p.eval(0.5, 0.5);
  const Vec3 nu = p.normal(0.5, 0.5);
  if (nu.dot(f - interior_point) < 0.0) return p.flipped_v();
  return p;
}

}  // namespace

NurbsPatch make_sphere_patch() {
  // The planar biquadratic patch whose image under the inverse stereographic
  // projection from (0,0,1) is exactly the spherical square over the cube
  // face centered at (0,0,-1).  Its edges are 30-degree circular arcs of the
  // four circles of radius sqrt(2) centered at (+-1,0), (0,+-1).
  const double a = 0.5 * (std::sqrt(3.0) - 1.0);
  const double b = 2.0 * std::sqrt(3.0) - 3.0;
  const double c = std::cos(kPi / 12.0);

  const double px[3][3] = {{-a, -b, -a}, {0.0, 0.0, 0.0}, {a, b, a}};
  const double py[3][3] = {{-a, 0.0, a}, {-b, 0.0, b}, {-a, 0.0, a}};
  const double pw[3][3] = {{1.0, c, 1.0}, {c, c * c, c}, {1.0, c, 1.0}};

  // homogeneous plane coordinates (X, Y, W), Bernstein bidegree (2,2)
  Eigen::MatrixXd X(3, 3), Y(3, 3), W(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      X(i, j) = pw[i][j] * px[i][j];
      Y(i, j) = pw[i][j] * py[i][j];
      W(i, j) = pw[i][j];
    }
  }

  // inverse stereographic lift: (2XW, 2YW, X^2+Y^2-W^2) / (X^2+Y^2+W^2)
  const Eigen::MatrixXd XX = bernstein_mul(X, X), YY = bernstein_mul(Y, Y),
                        WW = bernstein_mul(W, W), XW = bernstein_mul(X, W),
                        YW = bernstein_mul(Y, W);
  const Eigen::MatrixXd num_x = 2.0 * XW, num_y = 2.0 * YW;
  const Eigen::MatrixXd num_z = XX + YY - WW;
  const Eigen::MatrixXd den = XX + YY + WW;

  std::vector<Vec3> pts(25);
  std::vector<double> wts(25);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      const double w = den(i, j);
      wts[static_cast<size_t>(i * 5 + j)] = w;
      pts[static_cast<size_t>(i * 5 + j)] = Vec3(num_x(i, j), num_y(i, j), num_z(i, j)) / w;
    }
  }
  KnotVector quartic({0, 0, 0, 0, 0, 1, 1, 1, 1, 1}, 4);
  NurbsPatch patch(quartic, quartic, std::move(pts), std::move(wts));
  return oriented_outward(std::move(patch), Vec3::Zero());
}

MultiPatchSurface make_sphere() {
  const NurbsPatch base = make_sphere_patch();  // face center (0,0,-1)
  std::vector<Eigen::Matrix3d> rots;
  auto rot = [](const Vec3& axis, double angle) {
    return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
  };
  rots.push_back(Eigen::Matrix3d::Identity());        // -z
  rots.push_back(rot(Vec3::UnitX(), kPi));            // +z
  rots.push_back(rot(Vec3::UnitY(), -kPi / 2.0));     // (0,0,-1) -> (-1,0,0)
  rots.push_back(rot(Vec3::UnitY(), kPi / 2.0));      // (0,0,-1) -> (+1,0,0)
  rots.push_back(rot(Vec3::UnitX(), kPi / 2.0));      // (0,0,-1) -> (0,-1,0) or (0,+1,0)
  rots.push_back(rot(Vec3::UnitX(), -kPi / 2.0));
  std::vector<NurbsPatch> patches;
  patches.reserve(6);
  for (const auto& r : rots) patches.push_back(apply_rotation(base, r));
  return MultiPatchSurface(std::move(patches));
}

MultiPatchSurface make_torus() {
  // 90-degree rational quadratic arcs of the unit circle, quadrant q.
  struct Arc {
    double x[3], y[3], w[3];
  };
  auto quarter_arc = [](int q) {
    Arc arc;
    const double pts[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const double mid[4][2] = {{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
    arc.x[0] = pts[q % 4][0];
    arc.y[0] = pts[q % 4][1];
    arc.x[1] = mid[q % 4][0];
    arc.y[1] = mid[q % 4][1];
    arc.x[2] = pts[(q + 1) % 4][0];
    arc.y[2] = pts[(q + 1) % 4][1];
    arc.w[0] = arc.w[2] = 1.0;
    arc.w[1] = std::sqrt(0.5);
    return arc;
  };

  KnotVector quad({0, 0, 0, 1, 1, 1}, 2);
  std::vector<NurbsPatch> patches;
  patches.reserve(16);
  const double ring = 2.0;  // centerline radius; tube radius 1
  for (int qt = 0; qt < 4; ++qt) {
    const Arc th = quarter_arc(qt);
    for (int qp = 0; qp < 4; ++qp) {
      const Arc ph = quarter_arc(qp);
      std::vector<Vec3> pts(9);
      std::vector<double> wts(9);
      for (int i = 0; i < 3; ++i) {    // toroidal index -> t1
        for (int j = 0; j < 3; ++j) {  // poloidal index -> t2
          const double radial = ring + ph.x[j];
          pts[static_cast<size_t>(i * 3 + j)] = Vec3(th.x[i] * radial, th.y[i] * radial, ph.y[j]);
          wts[static_cast<size_t>(i * 3 + j)] = th.w[i] * ph.w[j];
        }
      }
      NurbsPatch patch(quad, quad, std::move(pts), std::move(wts));
      // orient outward from the tube centerline under the patch midpoint
      const Vec3 f = patch.eval(0.5, 0.5);
      const Vec3 axis_pt = ring * Vec3(f.x(), f.y(), 0.0).normalized();
      patches.push_back(oriented_outward(std::move(patch), axis_pt));
    }
  }
  return MultiPatchSurface(std::move(patches));
}

NurbsPatch make_bilinear_patch(const Vec3& p00, const Vec3& p10, const Vec3& p01, const Vec3& p11) {
  KnotVector lin({0, 0, 1, 1}, 1);
  return NurbsPatch(lin, lin, {p00, p01, p10, p11}, {1, 1, 1, 1});
}

NurbsPatch make_cylinder_patch() {
  KnotVector quad({0, 0, 0, 1, 1, 1}, 2);
  KnotVector lin({0, 0, 1, 1}, 1);
  const double w = std::sqrt(0.5);
  std::vector<Vec3> pts = {Vec3(1, 0, 0), Vec3(1, 0, 1), Vec3(1, 1, 0),
                           Vec3(1, 1, 1), Vec3(0, 1, 0), Vec3(0, 1, 1)};
  std::vector<double> wts = {1, 1, w, w, 1, 1};
  return NurbsPatch(quad, lin, std::move(pts), std::move(wts));
}

}  // namespace igabem
