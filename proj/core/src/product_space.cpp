#include "igabem/product_space.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "igabem/bspline.hpp"

namespace igabem {

namespace {

int multiplicity_in(const std::vector<double>& knots, double x, double tol) {
  int m = 0;
  for (double t : knots) {
    if (std::abs(t - x) <= tol) ++m;
  }
  return m;
}

}  // namespace

ProductSpace1D make_product_space(const KnotVector& qi_knots, const KnotVector& trial_knots,
                                  int trial_index) {
  const int p = qi_knots.degree();
  const int d = trial_knots.degree();
  const int q = p + d;
  const double A = qi_knots.front();
  const double B = qi_knots.back();
  const double suppA = trial_knots[trial_index];
  const double suppB = trial_knots[trial_index + d + 1];
  const double tol = 1e-12 * std::max(1.0, B - A);
  if (std::abs(suppA - A) > 1e-9 || std::abs(suppB - B) > 1e-9)
    throw StructureError("make_product_space: QI space and trial support domains differ");

  // Local trial knots interior to (A,B).
  std::vector<double> trial_local;
  for (int m = trial_index + 1; m <= trial_index + d; ++m) {
    const double x = trial_knots[m];
    if (x > A + tol && x < B - tol) trial_local.push_back(x);
  }

  // Breakpoints of the product space: union of QI breakpoints and local trial
  // knots.  Multiplicity at x: q - min over factors of their continuity there.
  std::map<double, int> mult;
  for (double x : qi_knots.breakpoints()) {
    if (x > A + tol && x < B - tol) {
      const int m_qi = multiplicity_in(qi_knots.entries(), x, tol);
      mult[x] = std::max(mult.count(x) ? mult[x] : 0, m_qi + d);  // cont = p - m_qi
    }
  }
  for (double x : trial_local) {
    const int m_tr = multiplicity_in(trial_local, x, tol);
    const int m_qi = multiplicity_in(qi_knots.entries(), x, tol);
    const int cont = std::min(p - m_qi, d - m_tr);
    int& slot = mult[x];
    slot = std::max(slot, q - cont);
  }
  // Merge near-identical breakpoints (shared knots of both factors).
  std::vector<double> breaks{A};
  std::vector<int> mults;
  for (auto& [x, m] : mult) {
    if (!breaks.empty() && std::abs(x - breaks.back()) <= tol) {
      if (!mults.empty()) mults.back() = std::max(mults.back(), m);
      continue;
    }
    breaks.push_back(x);
    mults.push_back(std::min(m, q + 1));
  }
  breaks.push_back(B);

  ProductSpace1D out{KnotVector::from_breakpoints(q, breaks, mults), {}, {}};
  const KnotVector& pk = out.knots;
  const int nqi = qi_knots.num_basis();
  const int npi = pk.num_basis();
  out.G = Eigen::MatrixXd::Zero(nqi, npi);
  out.integrals.resize(npi);

  Eigen::VectorXd binom = Eigen::VectorXd::Zero(q + 1);
  for (int k = 0; k < npi; ++k) {
    out.integrals[k] = bspline_integral(pk, k);
    // Widest nonempty span inside the support of product function k.
    int best_span = -1;
    double best_len = 0.0;
    for (int s = k; s <= k + q; ++s) {
      const double len = pk[s + 1] - pk[s];
      if (len > best_len) {
        best_len = len;
        best_span = s;
      }
    }
    if (best_span < 0) continue;  // degenerate support
    const double tau = 0.5 * (pk[best_span] + pk[best_span + 1]);

    const auto qi_ders = eval_basis_derivatives(qi_knots, tau, q);
    const Eigen::VectorXd tr_ders = eval_one_basis_derivatives(trial_knots, trial_index, tau, q);

    for (int loc = 0; loc <= p; ++loc) {
      const int i = qi_ders.span - p + loc;
      if (i < 0 || i >= nqi) continue;
      // Leibniz product derivatives of B_i^(QI) * B_trial at tau.
      Eigen::VectorXd prod_ders(q + 1);
      for (int r = 0; r <= q; ++r) {
        binom[0] = 1.0;
        for (int s = 1; s <= r; ++s) binom[s] = binom[s - 1] * (r - s + 1) / s;
        double acc = 0.0;
        for (int s = 0; s <= r; ++s) acc += binom[s] * qi_ders.ders(s, loc) * tr_ders[r - s];
        prod_ders[r] = acc;
      }
      out.G(i, k) = deboor_fix(pk, k, tau, prod_ders);
    }
  }
  return out;
}

}  // namespace igabem
