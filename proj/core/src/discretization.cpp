#include "igabem/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace igabem {

namespace {

// union-find
int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}
void unite(std::vector<int>& parent, int a, int b) {
  a = find_root(parent, a);
  b = find_root(parent, b);
  if (a != b) parent[std::max(a, b)] = std::min(a, b);
}

// boundary basis index (j1,j2) of the i-th function along edge e
std::pair<int, int> edge_basis_index(int e, int i, int n1, int n2) {
  switch (e) {
    case 0: return {i, 0};
    case 1: return {n1 - 1, i};
    case 2: return {i, n2 - 1};
    case 3: return {0, i};
    default: throw ConfigError("edge id must be 0..3");
  }
}

int edge_rank(int e, int n1, int n2) { return (e == 0 || e == 2) ? n1 : n2; }

const KnotVector& edge_knots(const TensorSplineSpace& sp, int e) {
  return (e == 0 || e == 2) ? sp.u() : sp.v();
}

bool knots_match(const KnotVector& a, const KnotVector& b, bool reversed) {
  if (a.degree() != b.degree() || a.size() != b.size()) return false;
  const int n = a.size();
  for (int i = 0; i < n; ++i) {
    const double bv = reversed ? 1.0 - b[n - 1 - i] : b[i];
    if (std::abs(a[i] - bv) > 1e-12) return false;
  }
  return true;
}

}  // namespace

DiscretizationSpace::DiscretizationSpace(const MultiPatchSurface& surface,
                                         std::vector<TensorSplineSpace> patch_spaces,
                                         Continuity continuity)
    : surface_(&surface), spaces_(std::move(patch_spaces)), continuity_(continuity) {
  const int m = surface.num_patches();
  if (static_cast<int>(spaces_.size()) != m)
    throw StructureError("DiscretizationSpace: one spline space per patch required");

  patch_offset_.resize(static_cast<size_t>(m) + 1, 0);
  for (int p = 0; p < m; ++p) patch_offset_[p + 1] = patch_offset_[p] + spaces_[p].dimension();
  const int total = patch_offset_[static_cast<size_t>(m)];

  std::vector<int> parent(static_cast<size_t>(total));
  std::iota(parent.begin(), parent.end(), 0);

  if (continuity_ == Continuity::c0) {
    for (const auto& rec : surface.interfaces()) {
      const auto& sa = spaces_[static_cast<size_t>(rec.patch_a)];
      const auto& sb = spaces_[static_cast<size_t>(rec.patch_b)];
      if (!knots_match(edge_knots(sa, rec.edge_a), edge_knots(sb, rec.edge_b), rec.reversed))
        throw StructureError("C0 space: knot vectors on a shared edge do not match");
      const int na = edge_rank(rec.edge_a, sa.num_basis1(), sa.num_basis2());
      const int nb = edge_rank(rec.edge_b, sb.num_basis1(), sb.num_basis2());
      if (na != nb) throw StructureError("C0 space: edge dimensions differ");
      for (int i = 0; i < na; ++i) {
        const int ib = rec.reversed ? na - 1 - i : i;
        const auto [a1, a2] = edge_basis_index(rec.edge_a, i, sa.num_basis1(), sa.num_basis2());
        const auto [b1, b2] = edge_basis_index(rec.edge_b, ib, sb.num_basis1(), sb.num_basis2());
        unite(parent, patch_offset_[rec.patch_a] + sa.flatten(a1, a2),
              patch_offset_[rec.patch_b] + sb.flatten(b1, b2));
      }
    }
  }

  // classes ordered by their lowest constituent
  std::map<int, int> root_to_dof;
  local_to_global_.resize(static_cast<size_t>(m));
  for (int p = 0; p < m; ++p)
    local_to_global_[p].assign(static_cast<size_t>(spaces_[p].dimension()), -1);
  for (int uid = 0; uid < total; ++uid) {
    const int root = find_root(parent, uid);
    auto [it, inserted] = root_to_dof.try_emplace(root, static_cast<int>(dofs_.size()));
    if (inserted) dofs_.emplace_back();
    const int dof = it->second;
    // locate patch of uid
    const int p = static_cast<int>(std::upper_bound(patch_offset_.begin(), patch_offset_.end(), uid) -
                                   patch_offset_.begin()) - 1;
    const auto [j1, j2] = spaces_[p].unflatten(uid - patch_offset_[p]);
    dofs_[static_cast<size_t>(dof)].push_back({p, j1, j2});
    local_to_global_[p][static_cast<size_t>(uid - patch_offset_[p])] = dof;
  }
}

DiscretizationSpace DiscretizationSpace::uniform(const MultiPatchSurface& surface, int degree,
                                                 int elements_per_dir, Continuity continuity) {
  return uniform_rect(surface, degree, elements_per_dir, elements_per_dir, continuity);
}

DiscretizationSpace DiscretizationSpace::uniform_rect(const MultiPatchSurface& surface, int degree,
                                                      int n1, int n2, Continuity continuity) {
  std::vector<TensorSplineSpace> spaces;
  spaces.reserve(static_cast<size_t>(surface.num_patches()));
  for (int p = 0; p < surface.num_patches(); ++p) {
    spaces.emplace_back(KnotVector::uniform_clamped(degree, n1),
                        KnotVector::uniform_clamped(degree, n2));
  }
  return DiscretizationSpace(surface, std::move(spaces), continuity);
}

int DiscretizationSpace::global_dof(int patch, int j1, int j2) const {
  return local_to_global_[static_cast<size_t>(patch)]
                         [static_cast<size_t>(spaces_[static_cast<size_t>(patch)].flatten(j1, j2))];
}

double DiscretizationSpace::mesh_size() const {
  double h = 0.0;
  for (const auto& sp : spaces_) h = std::max({h, sp.u().max_span(), sp.v().max_span()});
  return h;
}

Complex DiscretizationSpace::eval(const VectorXc& coeffs, int patch, double t1, double t2) const {
  const auto& sp = spaces_[static_cast<size_t>(patch)];
  const auto b1 = eval_basis(sp.u(), t1);
  const auto b2 = eval_basis(sp.v(), t2);
  Complex acc = 0.0;
  for (int c1 = 0; c1 <= sp.degree1(); ++c1) {
    const int j1 = b1.span - sp.degree1() + c1;
    for (int c2 = 0; c2 <= sp.degree2(); ++c2) {
      const int j2 = b2.span - sp.degree2() + c2;
      acc += coeffs[global_dof(patch, j1, j2)] * b1.values[c1] * b2.values[c2];
    }
  }
  return acc;
}

std::vector<CollocationPoint> DiscretizationSpace::collocation_points(double omega) const {
  const bool improved = continuity_ == Continuity::discontinuous;
  std::vector<CollocationPoint> points(static_cast<size_t>(num_dofs()));

  std::vector<std::vector<double>> grev1(spaces_.size()), grev2(spaces_.size());
  for (size_t p = 0; p < spaces_.size(); ++p) {
    const bool imp = improved && spaces_[p].degree1() >= 1;
    grev1[p] = spaces_[p].u().greville(imp, omega);
    grev2[p] = spaces_[p].v().greville(imp && spaces_[p].degree2() >= 1, omega);
  }

  for (int dof = 0; dof < num_dofs(); ++dof) {
    const auto& cons = dofs_[static_cast<size_t>(dof)];
    CollocationPoint pt;
    for (const auto& c : cons) {
      const Vec2 s(grev1[static_cast<size_t>(c.patch)][static_cast<size_t>(c.j1)],
                   grev2[static_cast<size_t>(c.patch)][static_cast<size_t>(c.j2)]);
      pt.preimages.emplace_back(c.patch, s);
    }
    pt.x = surface_->patch(cons.front().patch)
               .eval(pt.preimages.front().second.x(), pt.preimages.front().second.y());
    for (size_t k = 1; k < pt.preimages.size(); ++k) {
      const Vec3 xk = surface_->patch(pt.preimages[k].first)
                          .eval(pt.preimages[k].second.x(), pt.preimages[k].second.y());
      if ((xk - pt.x).norm() > 1e-9)
        throw StructureError("collocation: merged DOF Greville images do not coincide");
    }
    points[static_cast<size_t>(dof)] = std::move(pt);
  }

  // one point per DOF: reject coincident points for distinct DOFs
  std::map<std::tuple<long long, long long, long long>, int> seen;
  for (int dof = 0; dof < num_dofs(); ++dof) {
    const Vec3& x = points[static_cast<size_t>(dof)].x;
    const auto key = std::make_tuple(std::llround(x.x() * 1e9), std::llround(x.y() * 1e9),
                                     std::llround(x.z() * 1e9));
    auto [it, inserted] = seen.try_emplace(key, dof);
    if (!inserted) throw StructureError("collocation: duplicate points for distinct DOFs");
  }
  return points;
}

}  // namespace igabem
