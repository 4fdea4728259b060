#include "igabem/geometry.hpp"

#include <array>
#include <cmath>

#include "igabem/quasi_interpolation.hpp"

namespace igabem {

NurbsPatch::NurbsPatch(KnotVector knots_u, KnotVector knots_v, std::vector<Vec3> control_points,
                       std::vector<double> weights)
    : ku_(std::move(knots_u)), kv_(std::move(knots_v)), points_(std::move(control_points)),
      weights_(std::move(weights)) {
  const size_t n = static_cast<size_t>(ku_.num_basis()) * static_cast<size_t>(kv_.num_basis());
  if (points_.size() != n || weights_.size() != n)
    throw StructureError("NurbsPatch: control net size mismatch");
  for (double w : weights_) {
    if (!(w > 0.0)) throw GeometryError("NurbsPatch: weights must be strictly positive");
  }
}

Vec3 NurbsPatch::eval(double t1, double t2, bool extended) const {
  const auto b1 = extended ? eval_basis_extended(ku_, t1) : eval_basis(ku_, t1);
  const auto b2 = extended ? eval_basis_extended(kv_, t2) : eval_basis(kv_, t2);
  Vec3 num = Vec3::Zero();
  double den = 0.0;
  const int d1 = ku_.degree(), d2 = kv_.degree(), n2 = kv_.num_basis();
  for (int c1 = 0; c1 <= d1; ++c1) {
    const int i1 = b1.span - d1 + c1;
    for (int c2 = 0; c2 <= d2; ++c2) {
      const int i2 = b2.span - d2 + c2;
      const double wb = b1.values[c1] * b2.values[c2] * weights_[i1 * n2 + i2];
      num += wb * points_[i1 * n2 + i2];
      den += wb;
    }
  }
  if (!(den > 0.0)) throw GeometryError("NurbsPatch: non-positive weight function");
  return num / den;
}

SurfaceJets NurbsPatch::eval_jets(double t1, double t2, int order, bool extended) const {
  if (order > 4) throw ConfigError("NurbsPatch: jets implemented up to order 4");
  const auto b1 = eval_basis_derivatives(ku_, t1, order, extended);
  const auto b2 = eval_basis_derivatives(kv_, t2, order, extended);
  const int d1 = ku_.degree(), d2 = kv_.degree(), n2 = kv_.num_basis();

  // homogeneous derivatives: D^(a,b) of (sum w_i Q_i B_i, sum w_i B_i)
  Vec3 dn[5][5];
  double dw[5][5];
  for (int a = 0; a <= order; ++a) {
    for (int b = 0; a + b <= order; ++b) {
      Vec3 num = Vec3::Zero();
      double den = 0.0;
      for (int c1 = 0; c1 <= d1; ++c1) {
        const int i1 = b1.span - d1 + c1;
        for (int c2 = 0; c2 <= d2; ++c2) {
          const int i2 = b2.span - d2 + c2;
          const double wb = b1.ders(a, c1) * b2.ders(b, c2) * weights_[i1 * n2 + i2];
          num += wb * points_[i1 * n2 + i2];
          den += wb;
        }
      }
      dn[a][b] = num;
      dw[a][b] = den;
    }
  }
  if (!(dw[0][0] > 0.0)) throw GeometryError("NurbsPatch: non-positive weight function");

  // quotient rule, solved recursively by total order:
  // D^(a,b) F = ( D^(a,b) N - sum_{(al,be)<(a,b)} C(a,al) C(b,be) D^(al,be)F D^(a-al,b-be)W ) / W
  static const double binom[5][5] = {{1, 0, 0, 0, 0},
                                     {1, 1, 0, 0, 0},
                                     {1, 2, 1, 0, 0},
                                     {1, 3, 3, 1, 0},
                                     {1, 4, 6, 4, 1}};
  SurfaceJets jets;
  jets.order = order;
  for (int total = 0; total <= order; ++total) {
    for (int a = 0; a <= total; ++a) {
      const int b = total - a;
      Vec3 rhs = dn[a][b];
      for (int al = 0; al <= a; ++al) {
        for (int be = 0; be <= b; ++be) {
          if (al == a && be == b) continue;
          rhs -= binom[a][al] * binom[b][be] * dw[a - al][b - be] * jets.d[al][be];
        }
      }
      jets.d[a][b] = rhs / dw[0][0];
    }
  }
  return jets;
}

Vec3 NurbsPatch::normal(double t1, double t2, bool extended) const {
  const auto j = eval_jets(t1, t2, 1, extended);
  return j(1, 0).cross(j(0, 1));
}

double NurbsPatch::jacobian(double t1, double t2, bool extended) const {
  const double J = normal(t1, t2, extended).norm();
  if (J < 1e-14) throw GeometryError("NurbsPatch: degenerate parameterization (J ~ 0)");
  return J;
}

FundamentalForms NurbsPatch::fundamental_forms(double t1, double t2, bool extended) const {
  const auto j = eval_jets(t1, t2, 2, extended);
  const Vec3 nu = j(1, 0).cross(j(0, 1));
  FundamentalForms f;
  f.E = j(1, 0).dot(j(1, 0));
  f.F = j(1, 0).dot(j(0, 1));
  f.G = j(0, 1).dot(j(0, 1));
  f.L = nu.dot(j(2, 0));
  f.M = nu.dot(j(1, 1));
  f.N = nu.dot(j(0, 2));
  return f;
}

Eigen::AlignedBox3d NurbsPatch::bounding_box(const Rect& r) const {
  const int d1 = ku_.degree(), d2 = kv_.degree(), n2 = kv_.num_basis();
  const int sa1 = ku_.find_span(r.a1), sb1 = ku_.find_span(r.b1);
  const int sa2 = kv_.find_span(r.a2), sb2 = kv_.find_span(r.b2);
  Eigen::AlignedBox3d box;
  for (int i1 = sa1 - d1; i1 <= sb1; ++i1) {
    for (int i2 = sa2 - d2; i2 <= sb2; ++i2) {
      box.extend(points_[i1 * n2 + i2]);
    }
  }
  return box;
}

NurbsPatch NurbsPatch::flipped_v() const {
  const int n1 = num1(), n2 = num2();
  std::vector<Vec3> pts(points_.size());
  std::vector<double> w(weights_.size());
  for (int i1 = 0; i1 < n1; ++i1) {
    for (int i2 = 0; i2 < n2; ++i2) {
      pts[i1 * n2 + i2] = points_[i1 * n2 + (n2 - 1 - i2)];
      w[i1 * n2 + i2] = weights_[i1 * n2 + (n2 - 1 - i2)];
    }
  }
  std::vector<double> knots = kv_.entries();
  std::vector<double> rev(knots.size());
  const double lo = knots.front(), hi = knots.back();
  for (size_t i = 0; i < knots.size(); ++i) rev[i] = lo + hi - knots[knots.size() - 1 - i];
  return NurbsPatch(ku_, KnotVector(rev, kv_.degree()), std::move(pts), std::move(w));
}

double patch_area(const NurbsPatch& patch, int cells_per_dir, int qi_degree, int nodes_per_cell) {
  // regular spline rule with a degree-(0,0) trial function per cell: the
  // product space is the QI space itself, so the cell integral is
  // sum_i Lambda_i * int B_i.
  double area = 0.0;
  const double h = 1.0 / cells_per_dir;
  for (int c1 = 0; c1 < cells_per_dir; ++c1) {
    for (int c2 = 0; c2 < cells_per_dir; ++c2) {
      const Rect cell{c1 * h, (c1 + 1) * h, c2 * h, (c2 + 1) * h};
      QiOperator qi(qi_degree, qi_degree, nodes_per_cell, nodes_per_cell, cell);
      const auto pts = qi.sample_points();
      Eigen::VectorXd f(static_cast<int>(pts.size()));
      for (size_t k = 0; k < pts.size(); ++k)
        f[static_cast<int>(k)] = patch.jacobian(pts[k].x(), pts[k].y());
      const Eigen::VectorXd lambda = qi.apply(f);
      const KnotVector k1 = qi.knots1(), k2 = qi.knots2();
      const int m2 = k2.num_basis();
      for (int i1 = 0; i1 < k1.num_basis(); ++i1) {
        for (int i2 = 0; i2 < m2; ++i2) {
          area += lambda[i1 * m2 + i2] * bspline_integral(k1, i1) * bspline_integral(k2, i2);
        }
      }
    }
  }
  return area;
}

Vec2 edge_point(int e, double w) {
  switch (e) {
    case 0: return {w, 0.0};
    case 1: return {1.0, w};
    case 2: return {w, 1.0};
    case 3: return {0.0, w};
    default: throw ConfigError("edge_point: edge id must be 0..3");
  }
}

namespace {

constexpr int kEdgeSamples = 17;
constexpr double kMatchTol = 1e-10;

struct EdgeSamples {
  std::array<Vec3, kEdgeSamples> p;
};

EdgeSamples sample_edge(const NurbsPatch& patch, int e) {
  EdgeSamples s;
  for (int k = 0; k < kEdgeSamples; ++k) {
    const double w = static_cast<double>(k) / (kEdgeSamples - 1);
    const Vec2 t = edge_point(e, w);
    s.p[static_cast<size_t>(k)] = patch.eval(t.x(), t.y());
  }
  return s;
}

double match_error(const EdgeSamples& a, const EdgeSamples& b, bool reversed) {
  double err = 0.0;
  for (int k = 0; k < kEdgeSamples; ++k) {
    const int kb = reversed ? kEdgeSamples - 1 - k : k;
    err = std::max(err, (a.p[static_cast<size_t>(k)] - b.p[static_cast<size_t>(kb)]).norm());
  }
  return err;
}

}  // namespace

MultiPatchSurface::MultiPatchSurface(std::vector<NurbsPatch> patches,
                                     std::optional<std::vector<InterfaceRecord>> interfaces)
    : patches_(std::move(patches)) {
  const int m = num_patches();
  std::vector<std::array<EdgeSamples, 4>> edges(static_cast<size_t>(m));
  for (int p = 0; p < m; ++p)
    for (int e = 0; e < 4; ++e) edges[p][e] = sample_edge(patches_[p], e);

  if (interfaces) {
    interfaces_ = std::move(*interfaces);
    for (const auto& rec : interfaces_) {
      if (match_error(edges[rec.patch_a][rec.edge_a], edges[rec.patch_b][rec.edge_b],
                      rec.reversed) > kMatchTol)
        throw GeometryError("MultiPatchSurface: declared interface does not match pointwise");
    }
  } else {
    std::vector<std::vector<bool>> used(static_cast<size_t>(m), std::vector<bool>(4, false));
    for (int pa = 0; pa < m; ++pa) {
      for (int ea = 0; ea < 4; ++ea) {
        if (used[pa][ea]) continue;
        for (int pb = pa; pb < m && !used[pa][ea]; ++pb) {
          for (int eb = (pb == pa ? ea + 1 : 0); eb < 4; ++eb) {
            if (used[pb][eb]) continue;
            for (bool rev : {false, true}) {
              if (match_error(edges[pa][ea], edges[pb][eb], rev) <= kMatchTol) {
                interfaces_.push_back({pa, ea, pb, eb, rev});
                used[pa][ea] = used[pb][eb] = true;
                break;
              }
            }
            if (used[pa][ea]) break;
          }
        }
      }
    }
  }

  // closed surface: every edge in exactly one interface
  std::vector<std::vector<int>> count(static_cast<size_t>(m), std::vector<int>(4, 0));
  for (const auto& rec : interfaces_) {
    ++count[rec.patch_a][rec.edge_a];
    ++count[rec.patch_b][rec.edge_b];
  }
  for (int p = 0; p < m; ++p) {
    for (int e = 0; e < 4; ++e) {
      if (count[p][e] != 1)
        throw GeometryError("MultiPatchSurface: surface is not closed/conforming");
    }
  }

  // consistent orientation across every interface
  for (const auto& rec : interfaces_) {
    const Vec2 ta = edge_point(rec.edge_a, 0.47);
    const Vec2 tb = edge_point(rec.edge_b, rec.reversed ? 0.53 : 0.47);
    const Vec3 na = patches_[rec.patch_a].normal(ta.x(), ta.y());
    const Vec3 nb = patches_[rec.patch_b].normal(tb.x(), tb.y());
    if (na.normalized().dot(nb.normalized()) < 0.0)
      throw GeometryError("MultiPatchSurface: inconsistent patch orientations");
  }

  area_ = 0.0;
  for (auto& p : patches_) {
    const double a = patch_area(p);
    p.set_scale(std::sqrt(a));
    area_ += a;
  }
}

std::vector<InterfaceRecord> MultiPatchSurface::interfaces_of(int patch) const {
  std::vector<InterfaceRecord> out;
  for (const auto& rec : interfaces_) {
    if (rec.patch_a == patch || rec.patch_b == patch) out.push_back(rec);
  }
  return out;
}

}  // namespace igabem
