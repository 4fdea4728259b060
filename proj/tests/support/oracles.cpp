#include "support/oracles.hpp"

#include <cmath>

namespace igabem::testing {

namespace {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1].
const double kXgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                        0.741531185599394, 0.586087235467691, 0.405845151377397,
                        0.207784955007898, 0.0};
const double kWgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                        0.140653259715525, 0.169004726639267, 0.190350578064785,
                        0.204432940075298, 0.209482141084728};
const double kWg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                       0.417959183673469};

struct GkResult {
  double value;
  double error;
};

GkResult gk15(const Fn1& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double resk = 0.0, resg = 0.0;
  const double fc = f(c);
  resk += kWgk[7] * fc;
  resg += kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double fsum = f(c - x) + f(c + x);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  return {resk * h, std::abs((resk - resg) * h)};
}

double adapt_1d(const Fn1& f, double a, double b, double tol, int depth) {
  const auto r = gk15(f, a, b);
  // relative floor: no point requesting below a few ulps of the local value
  const double tol_eff = std::max(tol, 2e-15 * std::abs(r.value));
  if (r.error <= tol_eff || depth <= 0) return r.value;
  const double c = 0.5 * (a + b);
  return adapt_1d(f, a, c, 0.5 * tol, depth - 1) + adapt_1d(f, c, b, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_1d(const Fn1& f, double a, double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  return adapt_1d(f, a, b, tol, max_depth);
}

double integrate_2d(const Fn2& f, const Rect& r, double tol) {
  auto outer = [&](double t2) {
    return integrate_1d([&](double t1) { return f(t1, t2); }, r.a1, r.b1, tol * 0.05);
  };
  return integrate_1d(outer, r.a2, r.b2, tol);
}

double integrate_2d_singular(const Fn2& f, const Rect& r, const Vec2& z0, double tol) {
  // Polar integration over the triangle (z0, P1, P2); the edge P1->P2 is
  // axis-aligned.  Signed by traversal orientation.
  auto triangle = [&](const Vec2& p1, const Vec2& p2) -> double {
    const Vec2 d1 = p1 - z0, d2 = p2 - z0;
    const double cross = d1.x() * d2.y() - d1.y() * d2.x();
    if (std::abs(cross) < 1e-300) return 0.0;
    const double th1 = std::atan2(d1.y(), d1.x());
    double th2 = std::atan2(d2.y(), d2.x());
    // stay on the short arc (edge subtends < pi)
    if (th2 - th1 > kPi) th2 -= 2.0 * kPi;
    if (th1 - th2 > kPi) th2 += 2.0 * kPi;
    // line through p1,p2: n.z = c with n the inward normal from z0
    const Vec2 edge = p2 - p1;
    const Vec2 n(edge.y(), -edge.x());
    const double cval = n.dot(d1);
    auto outer = [&](double th) {
      const Vec2 dir(std::cos(th), std::sin(th));
      const double denom = n.dot(dir);
      const double rho_max = cval / denom;
      auto inner = [&](double u) {
        const double rho = u * rho_max;
        const Vec2 z = z0 + rho * dir;
        return f(z.x(), z.y()) * rho;
      };
      return rho_max * integrate_1d(inner, 0.0, 1.0, tol * 0.02);
    };
    return integrate_1d(outer, th1, th2, tol * 0.2);
  };

  const Vec2 c00(r.a1, r.a2), c10(r.b1, r.a2), c11(r.b1, r.b2), c01(r.a1, r.b2);
  double total = 0.0;
  total += triangle(c00, c10);
  total += triangle(c10, c11);
  total += triangle(c11, c01);
  total += triangle(c01, c00);
  return total;
}

}  // namespace igabem::testing
