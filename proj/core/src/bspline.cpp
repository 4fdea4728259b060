#include "igabem/bspline.hpp"

#include <cmath>

namespace igabem {

namespace {

// Cox-de Boor triangle at t for the given span.  Works for t outside the span
// as well, in which case it evaluates the polynomial extension of the pieces.
Eigen::VectorXd basis_funs(const KnotVector& kv, int span, double t) {
  const int p = kv.degree();
  Eigen::VectorXd N(p + 1), left(p + 1), right(p + 1);
  N[0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = t - kv[span + 1 - j];
    right[j] = kv[span + j] - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double denom = right[r + 1] + left[j - r];
      const double temp = (denom != 0.0) ? N[r] / denom : 0.0;
      N[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    N[j] = saved;
  }
  return N;
}

}  // namespace

BasisValues eval_basis(const KnotVector& kv, double t) {
  if (t < kv.front() || t > kv.back()) throw DomainError("eval_basis: t outside knot range");
  const int span = kv.find_span(t);
  return {span, basis_funs(kv, span, t)};
}

BasisValues eval_basis_extended(const KnotVector& kv, double t) {
  const int span = kv.find_span(t);
  return {span, basis_funs(kv, span, t)};
}

BasisDerivatives eval_basis_derivatives(const KnotVector& kv, double t, int nder, bool extended) {
  if (!extended && (t < kv.front() || t > kv.back()))
    throw DomainError("eval_basis_derivatives: t outside knot range");
  const int p = kv.degree();
  const int span = kv.find_span(t);
  const int du = std::min(nder, p);

  // The NURBS-book ders algorithm with the full inverse-difference triangle.
  Eigen::MatrixXd ndu(p + 1, p + 1);
  Eigen::VectorXd left(p + 1), right(p + 1);
  ndu(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = t - kv[span + 1 - j];
    right[j] = kv[span + j] - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu(j, r) = right[r + 1] + left[j - r];
      const double temp = (ndu(j, r) != 0.0) ? ndu(r, j - 1) / ndu(j, r) : 0.0;
      ndu(r, j) = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu(j, j) = saved;
  }

  Eigen::MatrixXd ders = Eigen::MatrixXd::Zero(nder + 1, p + 1);
  for (int j = 0; j <= p; ++j) ders(0, j) = ndu(j, p);

  Eigen::MatrixXd a(2, p + 1);
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a(0, 0) = 1.0;
    for (int k = 1; k <= du; ++k) {
      double d = 0.0;
      const int rk = r - k, pk = p - k;
      if (r >= k) {
        a(s2, 0) = (ndu(pk + 1, rk) != 0.0) ? a(s1, 0) / ndu(pk + 1, rk) : 0.0;
        d = a(s2, 0) * ndu(rk, pk);
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a(s2, j) = (ndu(pk + 1, rk + j) != 0.0) ? (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j) : 0.0;
        d += a(s2, j) * ndu(rk + j, pk);
      }
      if (r <= pk) {
        a(s2, k) = (ndu(pk + 1, r) != 0.0) ? -a(s1, k - 1) / ndu(pk + 1, r) : 0.0;
        d += a(s2, k) * ndu(r, pk);
      }
      ders(k, r) = d;
      std::swap(s1, s2);
    }
  }
  double fac = static_cast<double>(p);
  for (int k = 1; k <= du; ++k) {
    for (int j = 0; j <= p; ++j) ders(k, j) *= fac;
    fac *= static_cast<double>(p - k);
  }
  return {span, ders};
}

double eval_one_basis(const KnotVector& kv, int i, double t, bool extended) {
  const auto bv = extended ? eval_basis_extended(kv, t) : eval_basis(kv, t);
  const int offset = i - (bv.span - kv.degree());
  if (offset < 0 || offset > kv.degree()) return 0.0;
  return bv.values[offset];
}

Eigen::VectorXd eval_one_basis_derivatives(const KnotVector& kv, int i, double t, int nder,
                                           bool extended) {
  const auto bd = eval_basis_derivatives(kv, t, nder, extended);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(nder + 1);
  const int offset = i - (bd.span - kv.degree());
  if (offset < 0 || offset > kv.degree()) return out;
  out = bd.ders.col(offset);
  return out;
}

double bspline_integral(const KnotVector& kv, int i) {
  const int p = kv.degree();
  return (kv[i + p + 1] - kv[i]) / (p + 1);
}

Eigen::VectorXd deboor_fix_weights(const KnotVector& kv, int i, double tau) {
  const int p = kv.degree();
  // psi(y) = prod_{m=1..p} (y - t_{i+m}) expanded in powers of (y - tau); the
  // r-th coefficient times r! is psi^(r)(tau).
  Eigen::VectorXd c = Eigen::VectorXd::Zero(p + 1);
  c[0] = 1.0;
  for (int m = 1; m <= p; ++m) {
    const double shift = tau - kv[i + m];
    for (int r = m; r >= 1; --r) c[r] = c[r - 1] + shift * c[r];
    c[0] *= shift;
  }
  double pfac = 1.0;
  for (int r = 2; r <= p; ++r) pfac *= r;
  // lambda_i(f) = (1/p!) sum_r (-1)^(p-r) psi^(r)(tau) f^(p-r)(tau)
  Eigen::VectorXd w(p + 1);
  double rfac = 1.0;
  double sign = (p % 2 == 0) ? 1.0 : -1.0;
  for (int r = 0; r <= p; ++r) {
    w[p - r] = sign * rfac * c[r] / pfac;
    rfac *= (r + 1);
    sign = -sign;
  }
  return w;
}

double deboor_fix(const KnotVector& kv, int i, double tau, const Eigen::VectorXd& derivs_at_tau) {
  const int p = kv.degree();
  if (derivs_at_tau.size() < p + 1) throw StructureError("deboor_fix: need derivatives 0..p");
  return deboor_fix_weights(kv, i, tau).dot(derivs_at_tau.head(p + 1));
}

}  // namespace igabem
