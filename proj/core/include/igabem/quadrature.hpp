#pragma once

#include <optional>

#include "igabem/geometry.hpp"
#include "igabem/kernel_expansion.hpp"
#include "igabem/moments.hpp"
#include "igabem/quasi_interpolation.hpp"

namespace igabem {

/// Quadrature knobs.  QI degrees and node counts are independent per class;
/// node count 0 means the default 2d+3 uniform nodes per direction (the knots
/// of the trial B-spline and their midpoints).
struct QuadratureParams {
  int p_regular = 4;
  int p_singular = 2;
  int p_regularized = 2;
  int nu_regular = 0;
  int nu_singular = 0;
  int nu_regularized = 0;
  int extraction_order = 2;  // m
  double threshold_c = 0.25;

  static int default_nodes(int trial_degree) { return 2 * trial_degree + 3; }
  int resolve_nu(int requested, int trial_degree, int qi_degree) const {
    const int nu = requested > 0 ? requested : default_nodes(trial_degree);
    return std::max(nu, qi_degree + 2);
  }
};

enum class IntegrationClass { regular, nearly_singular, singular };

/// Near-singularity support threshold eta_j = max_i H_i^(1/(2(p_i+r_i+2)))
/// with r_i = 1 for even p_i and 0 for odd p_i.
double support_eta(double H1, double H2, int p1, int p2);

/// Patch threshold delta_k: the maximum of eta_j over all trial supports of
/// the discretization knot vectors.
double patch_delta(const KnotVector& tk1, const KnotVector& tk2, int p1, int p2);

/// Classification of one (collocation point, trial support) pair.
struct Classification {
  IntegrationClass cls = IntegrationClass::regular;
  Vec2 expansion_point{0.0, 0.0};  // s (same patch) or s_e (extended projection)
  bool interpatch = false;         // expansion point from the extended-patch projection
  double r_min_scaled = 0.0;
  bool unreliable = false;
};

/// Applies the distance test of the near-singularity detection.  `preimage`
/// is the parameter of x on this patch when x lies on it (possibly outside
/// the support); distances are measured on the mu-scaled patch.
Classification classify(const Vec3& x, const std::optional<Vec2>& preimage,
                        const NurbsPatch& patch, const Rect& support, double c_times_delta);

/// The three B-spline-tailored integration paths on the support of one trial
/// function B_{j1,j2}: the regular rule, the regularized-remainder rule, and
/// the singular rule with simplified-kernel moments.  All rules share the
/// form v^T G^T C^T f with per-direction factors.
class SupportRules {
 public:
  SupportRules(const KnotVector& tk1, int j1, const KnotVector& tk2, int j2,
               const QuadratureParams& params);

  const Rect& support() const { return support_; }

  // -- regular rule -------------------------------------------------------
  const std::vector<Vec2>& regular_nodes() const { return regular_nodes_; }
  double apply_regular(const Eigen::VectorXd& f) const;
  Complex apply_regular(const VectorXc& f) const;

  // -- regularized-remainder rule ------------------------------------------
  const std::vector<Vec2>& regularized_nodes() const { return regularized_nodes_; }
  double apply_regularized(const Eigen::VectorXd& f) const;
  Complex apply_regularized(const VectorXc& f) const;

  // -- singular rule --------------------------------------------------------
  const std::vector<Vec2>& singular_nodes() const { return singular_nodes_; }
  /// Moment matrix of the expansion against the product basis for source
  /// preimage s; reusable across applications with the same (s, expansion).
  Eigen::MatrixXd moments(const KernelExpansion& expansion, const Vec2& s) const;
  double apply_singular(const Eigen::MatrixXd& moments, const Eigen::VectorXd& g) const;
  Complex apply_singular(const Eigen::MatrixXd& moments, const VectorXc& g) const;

 private:
  struct Rank1Rule {
    QiOperator qi;
    Eigen::VectorXd u1, u2;  // value = u1^T F u2 on the sample grid
  };
  Rank1Rule make_rank1(int p, int nu, const KnotVector& tk1, int j1, const KnotVector& tk2,
                       int j2) const;

  Rect support_;
  Rank1Rule regular_, regularized_;
  QiOperator singular_qi_;
  ProductSpace1D sing_ps1_, sing_ps2_;
  std::vector<Vec2> regular_nodes_, regularized_nodes_, singular_nodes_;
};

}  // namespace igabem
