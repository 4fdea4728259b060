#include "igabem/quadrature.hpp"

#include <cmath>

namespace igabem {

double support_eta(double H1, double H2, int p1, int p2) {
  const int r1 = (p1 % 2 == 0) ? 1 : 0;
  const int r2 = (p2 % 2 == 0) ? 1 : 0;
  const double e1 = 1.0 / (2.0 * (p1 + r1 + 2));
  const double e2 = 1.0 / (2.0 * (p2 + r2 + 2));
  return std::max(std::pow(H1, e1), std::pow(H2, e2));
}

double patch_delta(const KnotVector& tk1, const KnotVector& tk2, int p1, int p2) {
  const int d1 = tk1.degree(), d2 = tk2.degree();
  double delta = 0.0;
  for (int j1 = 0; j1 < tk1.num_basis(); ++j1) {
    const double H1 = tk1[j1 + d1 + 1] - tk1[j1];
    if (H1 <= 0.0) continue;
    for (int j2 = 0; j2 < tk2.num_basis(); ++j2) {
      const double H2 = tk2[j2 + d2 + 1] - tk2[j2];
      if (H2 <= 0.0) continue;
      delta = std::max(delta, support_eta(H1, H2, p1, p2));
    }
  }
  return delta;
}

Classification classify(const Vec3& x, const std::optional<Vec2>& preimage,
                        const NurbsPatch& patch, const Rect& support, double c_times_delta) {
  Classification out;
  const double mu = patch.scale();
  if (preimage && support.contains(preimage->x(), preimage->y(), 1e-12)) {
    out.cls = IntegrationClass::singular;
    out.expansion_point = *preimage;
    out.r_min_scaled = 0.0;
    return out;
  }
  const auto dr = min_distance(patch, support, x);
  out.r_min_scaled = dr.distance / mu;
  if (out.r_min_scaled <= 1e-10) {
    // x lies on the patch piece itself: singular with the located preimage
    out.cls = IntegrationClass::singular;
    out.expansion_point = dr.t;
    return out;
  }
  if (out.r_min_scaled > c_times_delta) {
    out.cls = IntegrationClass::regular;
    return out;
  }
  out.cls = IntegrationClass::nearly_singular;
  if (preimage) {
    out.expansion_point = *preimage;  // exact subtraction at the true preimage
  } else {
    const auto proj = project_to_extended_patch(patch, x, dr.t);
    out.expansion_point = proj.s_e;
    out.interpatch = true;
    out.unreliable = proj.unreliable;
  }
  return out;
}

SupportRules::Rank1Rule SupportRules::make_rank1(int p, int nu, const KnotVector& tk1, int j1,
                                                 const KnotVector& tk2, int j2) const {
  QiOperator qi(p, p, nu, nu, support_);  // node counts match per direction (d1 == d2 in all runs)
  const ProductSpace1D ps1 = make_product_space(qi.knots1(), tk1, j1);
  const ProductSpace1D ps2 = make_product_space(qi.knots2(), tk2, j2);
  Rank1Rule rule{std::move(qi), {}, {}};
  rule.u1 = rule.qi.op1().weights() * (ps1.G * ps1.integrals);
  rule.u2 = rule.qi.op2().weights() * (ps2.G * ps2.integrals);
  return rule;
}

SupportRules::SupportRules(const KnotVector& tk1, int j1, const KnotVector& tk2, int j2,
                           const QuadratureParams& params)
    : support_{tk1[j1], tk1[j1 + tk1.degree() + 1], tk2[j2], tk2[j2 + tk2.degree() + 1]},
      regular_(make_rank1(params.p_regular, params.resolve_nu(params.nu_regular, tk1.degree(), params.p_regular),
                          tk1, j1, tk2, j2)),
      regularized_(make_rank1(params.p_regularized,
                              params.resolve_nu(params.nu_regularized, tk1.degree(), params.p_regularized),
                              tk1, j1, tk2, j2)),
      singular_qi_(params.p_singular, params.p_singular,
                   params.resolve_nu(params.nu_singular, tk1.degree(), params.p_singular),
                   params.resolve_nu(params.nu_singular, tk2.degree(), params.p_singular), support_),
      sing_ps1_(make_product_space(singular_qi_.knots1(), tk1, j1)),
      sing_ps2_(make_product_space(singular_qi_.knots2(), tk2, j2)) {
  regular_nodes_ = regular_.qi.sample_points();
  regularized_nodes_ = regularized_.qi.sample_points();
  singular_nodes_ = singular_qi_.sample_points();
}

double SupportRules::apply_regular(const Eigen::VectorXd& f) const {
  const int n1 = regular_.qi.op1().num_breakpoints(), n2 = regular_.qi.op2().num_breakpoints();
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> F(
      f.data(), n1, n2);
  return regular_.u1.dot(F * regular_.u2);
}

Complex SupportRules::apply_regular(const VectorXc& f) const {
  return {apply_regular(Eigen::VectorXd(f.real())), apply_regular(Eigen::VectorXd(f.imag()))};
}

double SupportRules::apply_regularized(const Eigen::VectorXd& f) const {
  const int n1 = regularized_.qi.op1().num_breakpoints(),
            n2 = regularized_.qi.op2().num_breakpoints();
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> F(
      f.data(), n1, n2);
  return regularized_.u1.dot(F * regularized_.u2);
}

Complex SupportRules::apply_regularized(const VectorXc& f) const {
  return {apply_regularized(Eigen::VectorXd(f.real())),
          apply_regularized(Eigen::VectorXd(f.imag()))};
}

Eigen::MatrixXd SupportRules::moments(const KernelExpansion& expansion, const Vec2& s) const {
  return product_moments(expansion, sing_ps1_.knots, sing_ps2_.knots, s);
}

double SupportRules::apply_singular(const Eigen::MatrixXd& moments,
                                    const Eigen::VectorXd& g) const {
  const int n1 = singular_qi_.op1().num_breakpoints(), n2 = singular_qi_.op2().num_breakpoints();
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> G(
      g.data(), n1, n2);
  const Eigen::MatrixXd lambda =
      singular_qi_.op1().weights().transpose() * G * singular_qi_.op2().weights();
  const Eigen::MatrixXd prod = sing_ps1_.G.transpose() * lambda * sing_ps2_.G;
  return (prod.array() * moments.array()).sum();
}

Complex SupportRules::apply_singular(const Eigen::MatrixXd& moments, const VectorXc& g) const {
  return {apply_singular(moments, Eigen::VectorXd(g.real())),
          apply_singular(moments, Eigen::VectorXd(g.imag()))};
}

}  // namespace igabem
