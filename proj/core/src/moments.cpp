#include "igabem/moments.hpp"

#include <cmath>
#include <unordered_map>

namespace igabem {

namespace {

// ---------------------------------------------------------------------------
// closed-form antiderivatives  A_{n,beta}(u) of u^n (c2 u^2 + c1 u + c0)^(-beta/2)
// ---------------------------------------------------------------------------

// Table of antiderivative values at a fixed u for all n <= nmax and odd
// beta <= bmax.  Recurrences:
//   A_{0,1} = asinh((2 c2 u + c1)/sqrt(D)) / sqrt(c2),        D = 4 c2 c0 - c1^2
//   A_{0,b} = 2/((b-2) D) [ (2 c2 u + c1) Q^{1-b/2} + 2 c2 (b-3) A_{0,b-2} ]
//   A_{n,b} = [ u^{n-1} Q^{1-b/2} - (n - b/2) c1 A_{n-1,b} - (n-1) c0 A_{n-2,b} ] / ((n+1-b) c2)
// with the degenerate index n = b-1 resolved through the lower-beta table:
//   A_{b-1,b} = ( A_{b-3,b-2} - c1 A_{b-2,b} - c0 A_{b-3,b} ) / c2.
struct AntiderivativeTable {
  // value(n, beta) with beta odd; beta index = (beta-1)/2
  Eigen::MatrixXd val;

  AntiderivativeTable(int nmax, int bmax, double c2, double c1, double c0, double u) {
    const double D = 4.0 * c2 * c0 - c1 * c1;
    const double Q = (c2 * u + c1) * u + c0;
    const int nb = (bmax - 1) / 2 + 1;
    val.resize(nmax + 1, nb);
    for (int bi = 0; bi < nb; ++bi) {
      const int b = 2 * bi + 1;
      const double qpow = std::pow(Q, 1.0 - 0.5 * b);  // Q^{(2-b)/2}
      // A_{0,b}
      if (b == 1) {
        val(0, bi) = std::asinh((2.0 * c2 * u + c1) / std::sqrt(D)) / std::sqrt(c2);
      } else {
        val(0, bi) =
            2.0 / ((b - 2) * D) * ((2.0 * c2 * u + c1) * qpow + 2.0 * c2 * (b - 3) * val(0, bi - 1));
      }
      double upow = 1.0;  // u^{n-1}
      for (int n = 1; n <= nmax; ++n) {
        if (n == b - 1) {
          // cross-beta reduction (for b = 1 this index is n = 0, handled above)
          const double lower = val(n - 2, bi - 1);
          val(n, bi) = (lower - c1 * val(n - 1, bi) - (n >= 2 ? c0 * val(n - 2, bi) : 0.0)) / c2;
        } else {
          const double a1 = (n - 1 >= 0) ? val(n - 1, bi) : 0.0;
          const double a2 = (n - 2 >= 0) ? val(n - 2, bi) : 0.0;
          val(n, bi) =
              (upow * qpow - (n - 0.5 * b) * c1 * a1 - (n - 1) * c0 * a2) / ((n + 1 - b) * c2);
        }
        upow *= u;
      }
    }
  }
};

// definite integral of u^n Q^{-beta/2} over [u1, u2]
double line_integral(int n, int beta, double c2, double c1, double c0, double u1, double u2) {
  AntiderivativeTable t2(n, beta, c2, c1, c0, u2);
  AntiderivativeTable t1(n, beta, c2, c1, c0, u1);
  return t2.val(n, (beta - 1) / 2) - t1.val(n, (beta - 1) / 2);
}

// Gauss-Legendre nodes/weights (20 points) on [-1,1].
void gauss20(Eigen::VectorXd& x, Eigen::VectorXd& w) {
  static Eigen::VectorXd xs, ws;
  if (xs.size() == 0) {
    // Golub-Welsch on the Jacobi matrix
    const int n = 20;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
      const double b = i / std::sqrt(4.0 * i * i - 1.0);
      J(i, i - 1) = J(i - 1, i) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    xs = es.eigenvalues();
    ws.resize(n);
    for (int i = 0; i < n; ++i) ws[i] = 2.0 * es.eigenvectors()(0, i) * es.eigenvectors()(0, i);
  }
  x = xs;
  w = ws;
}

double ipow(double v, int e) {
  double r = 1.0;
  for (int i = 0; i < e; ++i) r *= v;
  return r;
}

// R^(-beta) for odd beta via the already available R^2
double odd_radial_power(double r2, int beta) {
  return 1.0 / (ipow(r2, (beta - 1) / 2) * std::sqrt(r2));
}

double separated_cell_gauss(const Mat2& M, int a, int b, int beta, const Rect& cell) {
  Eigen::VectorXd x, w;
  gauss20(x, w);
  const double h1 = 0.5 * cell.size1(), c1 = 0.5 * (cell.a1 + cell.b1);
  const double h2 = 0.5 * cell.size2(), c2 = 0.5 * (cell.a2 + cell.b2);
  double acc = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    const double z1 = c1 + h1 * x[i];
    for (int j = 0; j < x.size(); ++j) {
      const double z2 = c2 + h2 * x[j];
      const double R2 = M(0, 0) * z1 * z1 + 2.0 * M(0, 1) * z1 * z2 + M(1, 1) * z2 * z2;
      acc += w[i] * w[j] * ipow(z1, a) * ipow(z2, b) * odd_radial_power(R2, beta);
    }
  }
  return acc * h1 * h2;
}

// single Gauss sweep of the whole expansion against (t-s)^q over one cell
double separated_expansion_gauss(const KernelExpansion& exp, const Rect& zcell, int q1, int q2) {
  Eigen::VectorXd x, w;
  gauss20(x, w);
  const double h1 = 0.5 * zcell.size1(), c1 = 0.5 * (zcell.a1 + zcell.b1);
  const double h2 = 0.5 * zcell.size2(), c2 = 0.5 * (zcell.a2 + zcell.b2);
  double acc = 0.0;
  for (int i = 0; i < x.size(); ++i) {
    const double z1 = c1 + h1 * x[i];
    for (int j = 0; j < x.size(); ++j) {
      const double z2 = c2 + h2 * x[j];
      const double R2 = exp.metric(0, 0) * z1 * z1 + 2.0 * exp.metric(0, 1) * z1 * z2 +
                        exp.metric(1, 1) * z2 * z2;
      double u = 0.0;
      for (const auto& term : exp.terms)
        u += term.poly.eval(z1, z2) * odd_radial_power(R2, term.beta);
      acc += w[i] * w[j] * u * ipow(-z1, q1) * ipow(-z2, q2);
    }
  }
  return acc * h1 * h2;
}

bool cell_is_separated(const Rect& zcell) {
  const double dx = std::max({zcell.a1, 0.0, -zcell.b1});
  const double dy = std::max({zcell.a2, 0.0, -zcell.b2});
  return std::hypot(dx, dy) > std::hypot(zcell.size1(), zcell.size2());
}

}  // namespace

double homogeneous_cell_integral(const Mat2& metric, int a, int b, int beta, const Rect& cell) {
  if (cell.size1() <= 0.0 || cell.size2() <= 0.0) return 0.0;
  const int e = a + b + 2 - beta;
  if (e < 1) throw StructureError("homogeneous_cell_integral: non-integrable exponent");

  // The closed forms lose digits to cancellation once the origin is well away
  // from the cell; fixed-order Gauss is then both cheap and accurate.
  if (cell_is_separated(cell)) return separated_cell_gauss(metric, a, b, beta, cell);

  const double E = metric(0, 0), F = metric(0, 1), G = metric(1, 1);
  auto sgn_pow = [](double s, int n) { return (n % 2 == 0) ? 1.0 : (s < 0.0 ? -1.0 : 1.0); };

  double total = 0.0;
  // CCW edges: bottom, right, top, left
  struct Edge {
    bool vertical;
    double coord;       // X for vertical, Y for horizontal
    double from, to;    // traversal range of the free coordinate
  };
  const Edge edges[4] = {{false, cell.a2, cell.a1, cell.b1},
                         {true, cell.b1, cell.a2, cell.b2},
                         {false, cell.b2, cell.b1, cell.a1},
                         {true, cell.a1, cell.b2, cell.a2}};
  for (const Edge& ed : edges) {
    const double C = ed.coord;
    if (C == 0.0) continue;
    const double u1 = ed.from / C, u2 = ed.to / C;
    double J;
    if (ed.vertical) {
      // u = z2/z1 sweeps with the traversal
      J = line_integral(b, beta, G, 2.0 * F, E, u1, u2);
    } else {
      // u = z1/z2 sweeps against the traversal
      J = -line_integral(a, beta, E, 2.0 * F, G, u1, u2);
    }
    total += sgn_pow(C, a + b) * std::pow(std::abs(C), e) / e * J;
  }
  return total;
}

double basic_moment(const KernelExpansion& exp, const Rect& tcell, const Vec2& s, int q1, int q2) {
  if (tcell.size1() <= 0.0 || tcell.size2() <= 0.0) return 0.0;
  // z = s - t: the t-cell maps to the z-cell below, orientation preserved.
  const Rect zcell{s.x() - tcell.b1, s.x() - tcell.a1, s.y() - tcell.b2, s.y() - tcell.a2};
  if (cell_is_separated(zcell)) return separated_expansion_gauss(exp, zcell, q1, q2);
  const double qsign = ((q1 + q2) % 2 == 0) ? 1.0 : -1.0;  // (t-s)^q = (-z)^q
  double total = 0.0;
  for (const auto& term : exp.terms) {
    const int dp = term.poly.deg();
    for (int k = 0; k <= dp; ++k) {
      const double coeff = term.poly.c[k];
      if (coeff == 0.0) continue;
      total += coeff * homogeneous_cell_integral(exp.metric, dp - k + q1, k + q2, term.beta, zcell);
    }
  }
  return qsign * total;
}

namespace {

// Weights expressing  int f(t) B_{k,r}(t) dt = sum_{i,q} w(i,q) int_{cell i} f(t) (t-s)^q dt
// for any f, from the Cox-de Boor recursion.  Cells are indexed by their left
// knot position in the product knot vector.
struct CellPowerWeights {
  // w(cell index offset from k, power q)
  Eigen::MatrixXd w;  // (r+1) x (r+1)
};

CellPowerWeights bspline_cell_weights(const KnotVector& kv, int k, double s) {
  const int r = kv.degree();
  std::vector<Eigen::MatrixXd> cur(1, Eigen::MatrixXd::Zero(r + 1, r + 1));
  // degree 0 at index k+off: weight 1 on (cell k+off, q=0)
  // we carry one matrix per basis offset at the current degree level
  // level rr: basis functions B_{k+off, rr} for off = 0..r-rr
  std::vector<Eigen::MatrixXd> level(static_cast<size_t>(r + 1), Eigen::MatrixXd::Zero(r + 1, r + 1));
  for (int off = 0; off <= r; ++off) level[static_cast<size_t>(off)](off, 0) = 1.0;
  for (int rr = 1; rr <= r; ++rr) {
    std::vector<Eigen::MatrixXd> next(static_cast<size_t>(r + 1 - rr),
                                      Eigen::MatrixXd::Zero(r + 1, r + 1));
    for (int off = 0; off + rr <= r; ++off) {
      const int i = k + off;
      Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(r + 1, r + 1);
      const double den1 = kv[i + rr] - kv[i];
      if (den1 > 0.0) {
        // (t - tau_i)/den1 * B_{i,rr-1} = ((t-s) + (s - tau_i))/den1 * ...
        const Eigen::MatrixXd& a = level[static_cast<size_t>(off)];
        acc.rightCols(r).noalias() += a.leftCols(r) / den1;  // q -> q+1
        acc.noalias() += (s - kv[i]) / den1 * a;
      }
      const double den2 = kv[i + rr + 1] - kv[i + 1];
      if (den2 > 0.0) {
        const Eigen::MatrixXd& bmat = level[static_cast<size_t>(off + 1)];
        acc.noalias() += (kv[i + rr + 1] - s) / den2 * bmat;
        acc.rightCols(r).noalias() -= bmat.leftCols(r) / den2;  // -(t-s)/den2
      }
      next[static_cast<size_t>(off)] = std::move(acc);
    }
    level = std::move(next);
  }
  return {level[0]};
}

}  // namespace

Eigen::MatrixXd product_moments(const KernelExpansion& exp, const KnotVector& pk1,
                                const KnotVector& pk2, const Vec2& s) {
  const int r1 = pk1.degree(), r2 = pk2.degree();
  const int n1 = pk1.num_basis(), n2 = pk2.num_basis();

  // per-basis cell/power weights in each direction
  std::vector<CellPowerWeights> w1(static_cast<size_t>(n1)), w2(static_cast<size_t>(n2));
  for (int k = 0; k < n1; ++k) w1[static_cast<size_t>(k)] = bspline_cell_weights(pk1, k, s.x());
  for (int k = 0; k < n2; ++k) w2[static_cast<size_t>(k)] = bspline_cell_weights(pk2, k, s.y());

  // memoized basic moments over (cell1, cell2, q1, q2)
  const int nk1 = pk1.size() - 1, nk2 = pk2.size() - 1;
  Eigen::VectorXd cache = Eigen::VectorXd::Constant(
      static_cast<Eigen::Index>(nk1) * nk2 * (r1 + 1) * (r2 + 1), std::nan(""));
  auto basic = [&](int i1, int i2, int q1, int q2) -> double {
    const Eigen::Index idx = ((static_cast<Eigen::Index>(i1) * nk2 + i2) * (r1 + 1) + q1) * (r2 + 1) + q2;
    double& slot = cache[idx];
    if (std::isnan(slot)) {
      const Rect tcell{pk1[i1], pk1[i1 + 1], pk2[i2], pk2[i2 + 1]};
      slot = basic_moment(exp, tcell, s, q1, q2);
    }
    return slot;
  };

  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n1, n2);
  for (int k1 = 0; k1 < n1; ++k1) {
    for (int k2 = 0; k2 < n2; ++k2) {
      double acc = 0.0;
      for (int o1 = 0; o1 <= r1; ++o1) {
        if (k1 + o1 + 1 >= pk1.size()) break;
        for (int q1 = 0; q1 <= r1; ++q1) {
          const double c1 = w1[static_cast<size_t>(k1)].w(o1, q1);
          if (c1 == 0.0) continue;
          for (int o2 = 0; o2 <= r2; ++o2) {
            if (k2 + o2 + 1 >= pk2.size()) break;
            for (int q2 = 0; q2 <= r2; ++q2) {
              const double c2 = w2[static_cast<size_t>(k2)].w(o2, q2);
              if (c2 == 0.0) continue;
              acc += c1 * c2 * basic(k1 + o1, k2 + o2, q1, q2);
            }
          }
        }
      }
      out(k1, k2) = acc;
    }
  }
  return out;
}

}  // namespace igabem
