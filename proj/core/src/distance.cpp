#include <cmath>

#include "igabem/geometry.hpp"

namespace igabem {

namespace {

double sq_dist(const NurbsPatch& patch, const Vec3& x, double t1, double t2, bool ext) {
  return (x - patch.eval(t1, t2, ext)).squaredNorm();
}

struct NewtonState {
  Vec2 t;
  double f;
};

// Damped Newton on the squared distance, iterates confined to `box`.
NewtonState newton_min(const NurbsPatch& patch, const Vec3& x, Vec2 t0, const Rect& box,
                       bool ext) {
  auto clamp = [&](Vec2 t) {
    t.x() = std::clamp(t.x(), box.a1, box.b1);
    t.y() = std::clamp(t.y(), box.a2, box.b2);
    return t;
  };
  Vec2 t = clamp(t0);
  double f = sq_dist(patch, x, t.x(), t.y(), ext);
  for (int it = 0; it < 60; ++it) {
    const auto j = patch.eval_jets(t.x(), t.y(), 2, ext);
    const Vec3 r = x - j(0, 0);
    Vec2 grad(-2.0 * r.dot(j(1, 0)), -2.0 * r.dot(j(0, 1)));
    Mat2 hess;
    hess(0, 0) = 2.0 * (j(1, 0).dot(j(1, 0)) - r.dot(j(2, 0)));
    hess(0, 1) = hess(1, 0) = 2.0 * (j(1, 0).dot(j(0, 1)) - r.dot(j(1, 1)));
    hess(1, 1) = 2.0 * (j(0, 1).dot(j(0, 1)) - r.dot(j(0, 2)));

    Vec2 step;
    const double det = hess(0, 0) * hess(1, 1) - hess(0, 1) * hess(1, 0);
    const bool spd = hess(0, 0) > 0.0 && det > 0.0;
    if (spd) {
      step = -hess.inverse() * grad;
    } else {
      const double gn = grad.norm();
      if (gn < 1e-300) break;
      step = -grad * (0.1 * std::max(box.size1(), box.size2()) / gn);
    }
    // backtracking with projection into the box
    double alpha = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 30; ++ls) {
      const Vec2 cand = clamp(t + alpha * step);
      const double fc = sq_dist(patch, x, cand.x(), cand.y(), ext);
      if (fc < f) {
        if ((cand - t).norm() < 1e-13) { t = cand; f = fc; break; }
        t = cand;
        f = fc;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) break;
    if (alpha * step.norm() < 1e-12) break;
  }
  return {t, f};
}

// Golden-section refinement along each coordinate inside a cell, alternated.
NewtonState golden_cell(const NurbsPatch& patch, const Vec3& x, const Rect& cell, bool ext) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  Vec2 t(0.5 * (cell.a1 + cell.b1), 0.5 * (cell.a2 + cell.b2));
  for (int sweep = 0; sweep < 6; ++sweep) {
    for (int dim = 0; dim < 2; ++dim) {
      double lo = dim == 0 ? cell.a1 : cell.a2;
      double hi = dim == 0 ? cell.b1 : cell.b2;
      auto f1d = [&](double v) {
        return dim == 0 ? sq_dist(patch, x, v, t.y(), ext) : sq_dist(patch, x, t.x(), v, ext);
      };
      double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
      double fc = f1d(c), fd = f1d(d);
      for (int it = 0; it < 40 && hi - lo > 1e-11; ++it) {
        if (fc < fd) {
          hi = d; d = c; fd = fc;
          c = hi - gr * (hi - lo);
          fc = f1d(c);
        } else {
          lo = c; c = d; fc = fd;
          d = lo + gr * (hi - lo);
          fd = f1d(d);
        }
      }
      (dim == 0 ? t.x() : t.y()) = 0.5 * (lo + hi);
    }
  }
  return {t, sq_dist(patch, x, t.x(), t.y(), ext)};
}

}  // namespace

DistanceResult min_distance(const NurbsPatch& patch, const Rect& r, const Vec3& x) {
  // coarse grid
  const int n = 16;
  Vec2 best(r.a1, r.a2);
  double fbest = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      const double t1 = r.a1 + r.size1() * i / n;
      const double t2 = r.a2 + r.size2() * j / n;
      const double f = sq_dist(patch, x, t1, t2, false);
      if (f < fbest) {
        fbest = f;
        best = {t1, t2};
      }
    }
  }
  NewtonState s = newton_min(patch, x, best, r, false);
  // golden-section fallback inside the best grid cell if Newton stalled high
  const Rect cell{std::max(r.a1, best.x() - r.size1() / n), std::min(r.b1, best.x() + r.size1() / n),
                  std::max(r.a2, best.y() - r.size2() / n), std::min(r.b2, best.y() + r.size2() / n)};
  const NewtonState g = golden_cell(patch, x, cell, false);
  if (g.f < s.f) s = g;
  return {std::sqrt(s.f), s.t};
}

ProjectionResult project_to_extended_patch(const NurbsPatch& patch, const Vec3& x,
                                           const Vec2& init) {
  const Rect d = patch.extended_domain();
  NewtonState s = newton_min(patch, x, init, d, true);
  ProjectionResult out;
  out.s_e = s.t;
  out.residual = std::sqrt(s.f);
  const double eps = 1e-12;
  const bool on_boundary = s.t.x() <= d.a1 + eps || s.t.x() >= d.b1 - eps ||
                           s.t.y() <= d.a2 + eps || s.t.y() >= d.b2 - eps;
  out.unreliable = on_boundary && out.residual > 1e-4 * std::max(1.0, x.norm());
  return out;
}

}  // namespace igabem
