#include "igabem/kernel_expansion.hpp"

#include <cmath>

namespace igabem {

namespace {

// degree-k Taylor piece of F(s+w) in w: sum_{a+b=k} F^(a,b) w1^a w2^b / (a! b!)
HPolyVec taylor_piece(const SurfaceJets& j, int k) {
  HPolyVec out = HPolyVec::zero(k);
  double fact[5] = {1, 1, 2, 6, 24};
  for (int a = 0; a <= k; ++a) {
    const int b = k - a;
    const double c = 1.0 / (fact[a] * fact[b]);
    // w1^a w2^b -> coefficient index b (z1^(deg-k) convention: index = power of w2)
    out.x.c[b] += c * j(a, b).x();
    out.y.c[b] += c * j(a, b).y();
    out.z.c[b] += c * j(a, b).z();
  }
  return out;
}

// degree-k piece of the expansion of dF/dt_dir (s+w)
HPolyVec tangent_piece(const SurfaceJets& j, int dir, int k) {
  HPolyVec out = HPolyVec::zero(k);
  double fact[5] = {1, 1, 2, 6, 24};
  for (int a = 0; a <= k; ++a) {
    const int b = k - a;
    const double c = 1.0 / (fact[a] * fact[b]);
    const Vec3& d = (dir == 1) ? j(a + 1, b) : j(a, b + 1);
    out.x.c[b] += c * d.x();
    out.y.c[b] += c * d.y();
    out.z.c[b] += c * d.z();
  }
  return out;
}

// flip w -> z = -w: homogeneous degree d picks up (-1)^d
HPoly to_z(const HPoly& p) { return (p.deg() % 2 == 0) ? p : p * (-1.0); }

}  // namespace

KernelExpansion expand_kernel(const NurbsPatch& patch, const Vec2& s, int m, int gamma,
                              double normal_sign, bool extended) {
  if (m < 1 || m > 3) throw ConfigError("expand_kernel: extraction order m must be 1..3");
  if (gamma != 0 && gamma != 1) throw ConfigError("expand_kernel: gamma must be 0 or 1");

  const double mu = patch.scale();
  SurfaceJets jets = patch.eval_jets(s.x(), s.y(), m + 1, extended);
  for (int a = 0; a <= jets.order; ++a)
    for (int b = 0; a + b <= jets.order; ++b) jets.d[a][b] /= mu;

  KernelExpansion out;
  out.m = m;
  out.gamma = gamma;

  const Vec3 F1 = jets(1, 0), F2 = jets(0, 1);
  out.metric << F1.dot(F1), F1.dot(F2), F1.dot(F2), F2.dot(F2);

  // Taylor pieces of Delta F = F(s+w) - F(s) and of the tangents, in w.
  std::vector<HPolyVec> A(static_cast<size_t>(m + 2), HPolyVec::zero(0));
  for (int k = 1; k <= m + 1; ++k) A[static_cast<size_t>(k)] = taylor_piece(jets, k);

  const HPoly R2 = A[1].dot(A[1]);  // = E w1^2 + 2F w1 w2 + G w2^2

  // r^2 pieces beyond R^2
  HPoly s3 = HPoly::zero(3), s4 = HPoly::zero(4);
  if (m >= 2) s3 = A[1].dot(A[2]) * 2.0;
  if (m >= 3) s4 = A[1].dot(A[3]) * 2.0 + A[2].dot(A[2]);

  if (gamma == 0) {
    out.terms.push_back({1, {Eigen::VectorXd::Ones(1)}});
    if (m >= 2) out.terms.push_back({3, to_z(s3 * (-0.5))});
    if (m >= 3) out.terms.push_back({5, to_z(R2 * s4 * (-0.5) + s3 * s3 * (3.0 / 8.0))});
  } else {
    // numerator pieces n_k = -(sum_{i+j=k} A_i . nu_j) of (x - y).nu(t)
    std::vector<HPolyVec> B1(static_cast<size_t>(m + 1), HPolyVec::zero(0));
    std::vector<HPolyVec> B2(static_cast<size_t>(m + 1), HPolyVec::zero(0));
    for (int k = 0; k <= m; ++k) {
      B1[static_cast<size_t>(k)] = tangent_piece(jets, 1, k);
      B2[static_cast<size_t>(k)] = tangent_piece(jets, 2, k);
    }
    std::vector<HPolyVec> nu(static_cast<size_t>(m + 1), HPolyVec::zero(0));
    for (int k = 0; k <= m; ++k) {
      HPolyVec acc = HPolyVec::zero(k);
      for (int i = 0; i <= k; ++i) acc = acc + B1[static_cast<size_t>(i)].cross(B2[static_cast<size_t>(k - i)]);
      nu[static_cast<size_t>(k)] = acc;
    }
    auto n_piece = [&](int k) {
      HPoly acc = HPoly::zero(k);
      for (int i = 1; i <= k - 0; ++i) {
        if (k - i > m) continue;
        acc = acc + A[static_cast<size_t>(i)].dot(nu[static_cast<size_t>(k - i)]);
      }
      return acc * (-1.0);
    };
    const HPoly n2 = n_piece(2);
    out.terms.push_back({3, to_z(n2) * normal_sign});
    if (m >= 2) {
      const HPoly n3 = n_piece(3);
      out.terms.push_back({5, to_z(n3 * R2 - n2 * s3 * 1.5) * normal_sign});
      if (m >= 3) {
        const HPoly n4 = n_piece(4);
        const HPoly p8 =
            n4 * (R2 * R2) - (n2 * s4 + n3 * s3) * R2 * 1.5 + n2 * (s3 * s3) * (15.0 / 8.0);
        out.terms.push_back({7, to_z(p8) * normal_sign});
      }
    }
  }
  return out;
}

}  // namespace igabem
