#include "igabem/assembly.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <ostream>
#include <random>

#include "igabem/kernels.hpp"
#include "igabem/parallel.hpp"

namespace igabem {

namespace {

using ExtraFn = std::function<Complex(const Vec3& point, const Vec3& unit_normal)>;

struct SampleSet {
  std::vector<Vec3> F;   // physical surface points at the nodes
  std::vector<Vec3> nu;  // non-normalized geometric normals
  std::vector<double> J;
};

// Everything reusable attached to one trial support (or RHS cell).
struct SupportCtx {
  SupportRules rules;
  Eigen::AlignedBox3d bbox;
  std::vector<std::pair<int, SampleSet>> samples;  // keyed by node count per direction

  SupportCtx(const KnotVector& tk1, int j1, const KnotVector& tk2, int j2,
             const QuadratureParams& qp, const NurbsPatch& patch)
      : rules(tk1, j1, tk2, j2, qp), bbox(patch.bounding_box(rules.support())) {}

  void add_samples(const NurbsPatch& patch, int nu_nodes, const std::vector<Vec2>& nodes) {
    for (const auto& [n, s] : samples) {
      if (n == nu_nodes) return;
    }
    SampleSet set;
    set.F.reserve(nodes.size());
    set.nu.reserve(nodes.size());
    set.J.reserve(nodes.size());
    for (const Vec2& t : nodes) {
      const auto jets = patch.eval_jets(t.x(), t.y(), 1);
      const Vec3 normal = jets(1, 0).cross(jets(0, 1));
      set.F.push_back(jets(0, 0));
      set.nu.push_back(normal);
      set.J.push_back(normal.norm());
    }
    samples.emplace_back(nu_nodes, std::move(set));
  }

  const SampleSet& samples_for(size_t node_count) const {
    for (const auto& [n, s] : samples) {
      if (static_cast<size_t>(n) * n == node_count || static_cast<size_t>(n) == node_count)
        return s;
    }
    throw StructureError("assembly: missing sample cache");
  }
};

struct PatchData {
  double mu = 1.0;
  double kappa_scaled = 0.0;
  double c_delta = 0.0;
  KnotVector cells1{{0.0, 1.0}, 0};
  KnotVector cells2{{0.0, 1.0}, 0};
};

struct RowPatchExpansion {
  bool ready = false;
  Vec2 point{0, 0};
  bool interpatch = false;
  KernelExpansion sl, dl;
};

class Assembler {
 public:
  Assembler(const BoundaryProblem& problem, const DiscretizationSpace& space,
            const AssemblyOptions& options)
      : problem_(problem), space_(space), opts_(options) {
    const auto& surface = space.surface();
    const int m = surface.num_patches();
    patches_.resize(static_cast<size_t>(m));
    trial_.resize(static_cast<size_t>(m));
    cells_.resize(static_cast<size_t>(m));

    for (int k = 0; k < m; ++k) {
      const auto& sp = space.patch_space(k);
      PatchData& pd = patches_[static_cast<size_t>(k)];
      pd.mu = surface.patch(k).scale();
      pd.kappa_scaled = problem.kappa * pd.mu;
      pd.c_delta = opts_.quad.threshold_c *
                   patch_delta(sp.u(), sp.v(), opts_.quad.p_regular, opts_.quad.p_regular);
      const auto b1 = sp.u().breakpoints();
      const auto b2 = sp.v().breakpoints();
      pd.cells1 = KnotVector::from_breakpoints(0, b1, std::vector<int>(b1.size() - 2, 1));
      pd.cells2 = KnotVector::from_breakpoints(0, b2, std::vector<int>(b2.size() - 2, 1));
    }

    // per-support machinery (parallel over patches' supports)
    for (int k = 0; k < m; ++k) {
      const auto& sp = space.patch_space(k);
      const NurbsPatch& patch = surface.patch(k);
      auto& list = trial_[static_cast<size_t>(k)];
      list.resize(static_cast<size_t>(sp.dimension()));
      parallel_for(sp.dimension(), opts_.threads, [&](int flat) {
        const auto [j1, j2] = sp.unflatten(flat);
        auto ctx = std::make_unique<SupportCtx>(sp.u(), j1, sp.v(), j2, opts_.quad, patch);
        prepare_samples(*ctx, patch);
        list[static_cast<size_t>(flat)] = std::move(ctx);
      });
      if (!problem_.rhs_pointwise) {
        const PatchData& pd = patches_[static_cast<size_t>(k)];
        const int nc = pd.cells1.num_basis() * pd.cells2.num_basis();
        auto& clist = cells_[static_cast<size_t>(k)];
        clist.resize(static_cast<size_t>(nc));
        const int c2n = pd.cells2.num_basis();
        parallel_for(nc, opts_.threads, [&](int flat) {
          const int c1 = flat / c2n, c2 = flat % c2n;
          auto ctx = std::make_unique<SupportCtx>(pd.cells1, c1, pd.cells2, c2, opts_.quad, patch);
          prepare_samples(*ctx, patch);
          clist[static_cast<size_t>(flat)] = std::move(ctx);
        });
      }
    }
  }

  CollocationSystem run() {
    CollocationSystem sys;
    sys.points = space_.collocation_points(opts_.omega);
    const int n = space_.num_dofs();
    sys.A = MatrixXc::Zero(n, n);
    sys.beta = VectorXc::Zero(n);
    parallel_for(n, opts_.threads, [&](int i) { compute_row(i, sys); });
    return sys;
  }

 private:
  void prepare_samples(SupportCtx& ctx, const NurbsPatch& patch) {
    ctx.samples.clear();
    auto key_of = [](size_t total) { return static_cast<int>(std::lround(std::sqrt(double(total)))); };
    ctx.add_samples(patch, key_of(ctx.rules.regular_nodes().size()), ctx.rules.regular_nodes());
    ctx.add_samples(patch, key_of(ctx.rules.singular_nodes().size()), ctx.rules.singular_nodes());
    ctx.add_samples(patch, key_of(ctx.rules.regularized_nodes().size()),
                    ctx.rules.regularized_nodes());
  }

  // classification with the cheap bounding-box pre-filter
  Classification classify_support(const CollocationPoint& cp, const std::optional<Vec2>& pre,
                                  int k, const SupportCtx& ctx) const {
    const PatchData& pd = patches_[static_cast<size_t>(k)];
    if (pre && ctx.rules.support().contains(pre->x(), pre->y(), 1e-12)) {
      Classification c;
      c.cls = IntegrationClass::singular;
      c.expansion_point = *pre;
      return c;
    }
    const double bbox_dist = std::sqrt(ctx.bbox.squaredExteriorDistance(cp.x)) / pd.mu;
    if (bbox_dist > pd.c_delta) {
      Classification c;
      c.cls = IntegrationClass::regular;
      c.r_min_scaled = bbox_dist;
      return c;
    }
    return classify(cp.x, pre, space_.surface().patch(k), ctx.rules.support(), pd.c_delta);
  }

  const RowPatchExpansion& ensure_expansion(std::vector<RowPatchExpansion>& cache, int k,
                                            const Classification& cls) const {
    RowPatchExpansion& e = cache[static_cast<size_t>(k)];
    if (!e.ready) {
      e.point = cls.expansion_point;
      e.interpatch = cls.interpatch;
      const NurbsPatch& patch = space_.surface().patch(k);
      const int m = opts_.quad.extraction_order;
      e.sl = expand_kernel(patch, e.point, m, 0, 1.0, e.interpatch);
      e.dl = expand_kernel(patch, e.point, m, 1, problem_.normal_sign(), e.interpatch);
      e.ready = true;
    }
    return e;
  }

  // single-layer contribution mu/(4 pi) * int G_k * B * extra J dt
  Complex sl_piece(int k, const SupportCtx& ctx, const Vec3& x, const Classification& cls,
                   const ExtraFn& extra, std::vector<RowPatchExpansion>* exps) const {
    const PatchData& pd = patches_[static_cast<size_t>(k)];
    const double mu = pd.mu, kk = pd.kappa_scaled;
    const double mu2 = mu * mu;
    auto node_values = [&](const std::vector<Vec2>& nodes, const SampleSet& S, auto&& fn) {
      VectorXc out(static_cast<int>(nodes.size()));
      for (size_t n = 0; n < nodes.size(); ++n) {
        const double rt = (x - S.F[n]).norm() / mu;
        const Complex ex = extra ? extra(S.F[n], S.nu[n] / S.J[n]) : Complex(1.0, 0.0);
        out[static_cast<int>(n)] = fn(n, rt, ex);
      }
      return out;
    };

    if (cls.cls == IntegrationClass::regular) {
      const SampleSet& S = ctx.samples_for(ctx.rules.regular_nodes().size());
      const VectorXc f = node_values(ctx.rules.regular_nodes(), S, [&](size_t n, double rt, Complex ex) {
        return ex * (S.J[n] / mu2) * Complex(std::cos(kk * rt) / rt, sl_imag_smooth(kk, rt));
      });
      return mu / (4.0 * kPi) * ctx.rules.apply_regular(f);
    }

    const RowPatchExpansion& e = ensure_expansion(*exps, k, cls);
    const Eigen::MatrixXd mom = ctx.rules.moments(e.sl, e.point);
    const SampleSet& Ss = ctx.samples_for(ctx.rules.singular_nodes().size());
    const VectorXc g = node_values(ctx.rules.singular_nodes(), Ss, [&](size_t n, double rt, Complex ex) {
      return ex * (Ss.J[n] / mu2) * std::cos(kk * rt);
    });
    Complex value = ctx.rules.apply_singular(mom, g);

    const SampleSet& Sr = ctx.samples_for(ctx.rules.regularized_nodes().size());
    const auto& rnodes = ctx.rules.regularized_nodes();
    const VectorXc rem = node_values(rnodes, Sr, [&](size_t n, double rt, Complex ex) {
      if (rt < 1e-10) return Complex(0.0, 0.0);
      const Vec2 z(e.point.x() - rnodes[n].x(), e.point.y() - rnodes[n].y());
      return ex * (Sr.J[n] / mu2) * std::cos(kk * rt) * (1.0 / rt - e.sl.eval(z));
    });
    value += ctx.rules.apply_regularized(rem);

    const SampleSet& S = ctx.samples_for(ctx.rules.regular_nodes().size());
    const VectorXc fi = node_values(ctx.rules.regular_nodes(), S, [&](size_t n, double rt, Complex ex) {
      return ex * (S.J[n] / mu2) * sl_imag_smooth(kk, rt);
    });
    value += Complex(0.0, 1.0) * ctx.rules.apply_regular(fi);
    return mu / (4.0 * kPi) * value;
  }

  // double-layer contribution 1/(4 pi) * int dG_k/dn * B * extra J dt
  Complex dl_piece(int k, const SupportCtx& ctx, const Vec3& x, const Classification& cls,
                   const ExtraFn& extra, std::vector<RowPatchExpansion>* exps) const {
    const PatchData& pd = patches_[static_cast<size_t>(k)];
    const double mu = pd.mu, kk = pd.kappa_scaled;
    const double mu3 = mu * mu * mu;
    const double sign = problem_.normal_sign();

    auto node_values = [&](const std::vector<Vec2>& nodes, const SampleSet& S, auto&& fn) {
      VectorXc out(static_cast<int>(nodes.size()));
      for (size_t n = 0; n < nodes.size(); ++n) {
        const double rt = (x - S.F[n]).norm() / mu;
        const double rnu = sign * (x - S.F[n]).dot(S.nu[n]) / mu3;  // scaled r . nu~
        const Complex ex = extra ? extra(S.F[n], S.nu[n] / S.J[n]) : Complex(1.0, 0.0);
        out[static_cast<int>(n)] = fn(n, rt, rnu, ex);
      }
      return out;
    };

    if (cls.cls == IntegrationClass::regular) {
      const SampleSet& S = ctx.samples_for(ctx.rules.regular_nodes().size());
      const VectorXc f =
          node_values(ctx.rules.regular_nodes(), S, [&](size_t, double rt, double rnu, Complex ex) {
            return ex * Complex(rnu / (rt * rt * rt) * dl_real_cofactor(kk, rt),
                                rnu / (rt * rt) * dl_imag_cofactor(kk, rt));
          });
      return 1.0 / (4.0 * kPi) * ctx.rules.apply_regular(f);
    }

    const RowPatchExpansion& e = ensure_expansion(*exps, k, cls);
    const Eigen::MatrixXd mom = ctx.rules.moments(e.dl, e.point);
    const SampleSet& Ss = ctx.samples_for(ctx.rules.singular_nodes().size());
    const VectorXc g =
        node_values(ctx.rules.singular_nodes(), Ss, [&](size_t, double rt, double, Complex ex) {
          return ex * dl_real_cofactor(kk, rt);
        });
    Complex value = ctx.rules.apply_singular(mom, g);

    const SampleSet& Sr = ctx.samples_for(ctx.rules.regularized_nodes().size());
    const auto& rnodes = ctx.rules.regularized_nodes();
    const VectorXc rem =
        node_values(rnodes, Sr, [&](size_t n, double rt, double rnu, Complex ex) {
          if (rt < 1e-10) return Complex(0.0, 0.0);
          const Vec2 z(e.point.x() - rnodes[n].x(), e.point.y() - rnodes[n].y());
          return ex * dl_real_cofactor(kk, rt) * (rnu / (rt * rt * rt) - e.dl.eval(z));
        });
    value += ctx.rules.apply_regularized(rem);

    const SampleSet& S = ctx.samples_for(ctx.rules.regular_nodes().size());
    const VectorXc fi =
        node_values(ctx.rules.regular_nodes(), S, [&](size_t, double rt, double rnu, Complex ex) {
          if (rt < 1e-10) return Complex(0.0, 0.0);
          return ex * rnu / (rt * rt) * dl_imag_cofactor(kk, rt);
        });
    value += Complex(0.0, 1.0) * ctx.rules.apply_regular(fi);
    return 1.0 / (4.0 * kPi) * value;
  }

  void compute_row(int i, CollocationSystem& sys) const {
    const CollocationPoint& cp = sys.points[static_cast<size_t>(i)];
    const int m = space_.surface().num_patches();
    std::vector<std::optional<Vec2>> pre(static_cast<size_t>(m));
    for (const auto& [p, s] : cp.preimages) pre[static_cast<size_t>(p)] = s;
    std::vector<RowPatchExpansion> exps(static_cast<size_t>(m));

    const bool neumann = problem_.bc == BcKind::neumann;

    // matrix row: operator kernel is DL for Neumann, SL for Dirichlet
    for (int dof = 0; dof < space_.num_dofs(); ++dof) {
      Complex acc = 0.0;
      for (const auto& c : space_.constituents(dof)) {
        const auto& ctx = *trial_[static_cast<size_t>(c.patch)]
                               [static_cast<size_t>(space_.patch_space(c.patch).flatten(c.j1, c.j2))];
        const auto cls = classify_support(cp, pre[static_cast<size_t>(c.patch)], c.patch, ctx);
        acc += neumann ? dl_piece(c.patch, ctx, cp.x, cls, nullptr, &exps)
                       : sl_piece(c.patch, ctx, cp.x, cls, nullptr, &exps);
      }
      sys.A(i, dof) = acc;
    }

    // jump term: + 1/2 B_j(x_i) for the Neumann operator
    if (neumann && opts_.jump_term) {
      std::map<int, double> jump;
      for (const auto& [p, s] : cp.preimages) {
        const auto& sp = space_.patch_space(p);
        const auto b1 = eval_basis(sp.u(), s.x());
        const auto b2 = eval_basis(sp.v(), s.y());
        for (int c1 = 0; c1 <= sp.degree1(); ++c1) {
          for (int c2 = 0; c2 <= sp.degree2(); ++c2) {
            const double v = b1.values[c1] * b2.values[c2];
            if (v == 0.0) continue;
            const int dof = space_.global_dof(p, b1.span - sp.degree1() + c1,
                                              b2.span - sp.degree2() + c2);
            jump[dof] = v;  // values agree across preimages (C0)
          }
        }
      }
      for (const auto& [dof, v] : jump) sys.A(i, dof) += 0.5 * v;
    }

    // right-hand side
    if (problem_.rhs_pointwise) {
      sys.beta[i] = problem_.rhs_pointwise(cp.x);
      return;
    }
    const double sign = problem_.normal_sign();
    ExtraFn extra;
    if (neumann) {
      extra = [&](const Vec3& y, const Vec3& n) { return sign * problem_.datum(y, n); };
    } else {
      extra = [&](const Vec3& y, const Vec3& n) { return problem_.datum(y, n); };
    }
    Complex acc = 0.0;
    for (int k = 0; k < m; ++k) {
      for (const auto& cptr : cells_[static_cast<size_t>(k)]) {
        const auto cls = classify_support(cp, pre[static_cast<size_t>(k)], k, *cptr);
        acc += neumann ? sl_piece(k, *cptr, cp.x, cls, extra, &exps)
                       : dl_piece(k, *cptr, cp.x, cls, extra, &exps);
      }
    }
    if (!neumann) {
      const Vec3 n0 = space_.surface().patch(cp.host_patch())
                          .normal(cp.host_s().x(), cp.host_s().y()).normalized();
      acc += 0.5 * problem_.datum(cp.x, n0);
    }
    sys.beta[i] = acc;
  }

  const BoundaryProblem& problem_;
  const DiscretizationSpace& space_;
  AssemblyOptions opts_;
  std::vector<PatchData> patches_;
  std::vector<std::vector<std::unique_ptr<SupportCtx>>> trial_;
  std::vector<std::vector<std::unique_ptr<SupportCtx>>> cells_;
};

}  // namespace

CollocationSystem assemble(const BoundaryProblem& problem, const DiscretizationSpace& space,
                           const AssemblyOptions& options) {
  Assembler assembler(problem, space, options);
  return assembler.run();
}

void solve(CollocationSystem& system) {
  const Eigen::Index n = system.A.rows();
  Eigen::PartialPivLU<MatrixXc> lu(system.A);
  system.alpha = lu.solve(system.beta);
  const double bnorm = system.beta.lpNorm<Eigen::Infinity>();
  system.stats.residual =
      bnorm > 0 ? (system.A * system.alpha - system.beta).lpNorm<Eigen::Infinity>() / bnorm : 0.0;

  // crude infinity-norm condition estimate from a few random solves
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pm(0, 1);
  double inv_norm = 0.0;
  for (int trial = 0; trial < 4; ++trial) {
    VectorXc v(n);
    for (Eigen::Index j = 0; j < n; ++j) v[j] = Complex(pm(rng) ? 1.0 : -1.0, 0.0);
    inv_norm = std::max(inv_norm, lu.solve(v).lpNorm<Eigen::Infinity>());
  }
  double row_norm = 0.0;
  for (Eigen::Index r = 0; r < n; ++r)
    row_norm = std::max(row_norm, system.A.row(r).lpNorm<1>());
  system.stats.cond_estimate = row_norm * inv_norm;
  system.stats.ill_conditioned = system.stats.cond_estimate > 1e12;
}

void dump_system(const CollocationSystem& system, std::ostream& out) {
  for (Eigen::Index i = 0; i < system.A.rows(); ++i) {
    for (Eigen::Index j = 0; j < system.A.cols(); ++j) {
      out << i << " " << j << " " << system.A(i, j).real() << " " << system.A(i, j).imag() << "\n";
    }
  }
  for (Eigen::Index i = 0; i < system.beta.size(); ++i) {
    out << "rhs " << i << " " << system.beta[i].real() << " " << system.beta[i].imag() << "\n";
  }
}

Eigen::VectorXd c_coefficient_diagnostic(const DiscretizationSpace& space,
                                         const AssemblyOptions& options) {
  BoundaryProblem laplace;
  laplace.domain = DomainKind::interior;
  laplace.bc = BcKind::neumann;
  laplace.kappa = 0.0;
  laplace.datum = [](const Vec3&, const Vec3&) { return Complex(0.0, 0.0); };
  laplace.rhs_pointwise = [](const Vec3&) { return Complex(0.0, 0.0); };
  AssemblyOptions opts = options;
  opts.jump_term = false;
  CollocationSystem sys = assemble(laplace, space, opts);
  const VectorXc ones = VectorXc::Ones(space.num_dofs());
  return Eigen::VectorXd(-(sys.A * ones).real());
}

}  // namespace igabem
