#include <doctest.h>

#include <cmath>
#include <random>

#include "igabem/geometry_factories.hpp"
#include "igabem/kernels.hpp"

using namespace igabem;

TEST_CASE("single layer kernel values") {
  CHECK(sl_kernel(0.0, 1.0).real() == doctest::Approx(1.0 / (4.0 * kPi)));
  CHECK(sl_kernel(0.0, 1.0).imag() == doctest::Approx(0.0));
  CHECK(sl_kernel(1.0, kPi).real() == doctest::Approx(-1.0 / (4.0 * kPi * kPi)));
  CHECK(sl_kernel(1.0, kPi).imag() == doctest::Approx(0.0).epsilon(1e-15));
  // removable imaginary part: limit kappa/(4 pi)
  CHECK(sl_kernel(2.0, 1e-8).imag() * 4.0 * kPi == doctest::Approx(2.0).epsilon(1e-10));
  CHECK_THROWS_AS(sl_kernel(1.0, 0.0), DomainError);
}

TEST_CASE("double layer kernel values") {
  SUBCASE("kappa=0 reduces to the Laplace double layer") {
    const Vec3 r(0.3, -0.2, 0.5);
    const Vec3 n = Vec3(1, 2, -1).normalized();
    const Complex v = dl_kernel(0.0, r, n);
    const double laplace = r.dot(n) / (4.0 * kPi * std::pow(r.norm(), 3));
    CHECK(v.real() == doctest::Approx(laplace).epsilon(1e-14));
    CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("r orthogonal to n vanishes") {
    const Vec3 r(1.0, 0.0, 0.0), n(0.0, 1.0, 0.0);
    CHECK(std::abs(dl_kernel(1.7, r, n)) == doctest::Approx(0.0));
  }
  SUBCASE("on the unit sphere (r.n)/r^2 = -1/2 for outward normals") {
    MultiPatchSurface sphere = make_sphere();
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> uni(0.05, 0.95);
    for (int k = 0; k < 40; ++k) {
      const auto& pa = sphere.patch(k % 6);
      const auto& pb = sphere.patch((k + 3) % 6);
      const double t1 = uni(rng), t2 = uni(rng), s1 = uni(rng), s2 = uni(rng);
      const Vec3 x = pa.eval(t1, t2), y = pb.eval(s1, s2);
      if ((x - y).norm() < 1e-3) continue;
      const Vec3 n = pb.normal(s1, s2).normalized();
      const double val = (x - y).dot(n) / (x - y).squaredNorm();
      CHECK(val == doctest::Approx(-0.5).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(dl_kernel(1.0, Vec3::Zero(), Vec3::UnitZ()), DomainError);
}

TEST_CASE("factorizations reassemble the kernels") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> uni(0.05, 3.0);
  for (int k = 0; k < 200; ++k) {
    const double kappa = uni(rng), r = uni(rng);
    // single layer
    const Complex sl = sl_kernel(kappa, r);
    const Complex sl_re(sl_real_cofactor(kappa, r) / r, sl_imag_smooth(kappa, r));
    CHECK(std::abs(sl - sl_re / (4.0 * kPi)) <= 1e-15 * std::abs(sl) + 1e-18);
    // double layer (non-normalized normal so both sides share the same r.n)
    const Vec3 rv = r * Vec3(std::sin(k * 0.7), std::cos(k * 0.7), 0.3).normalized();
    const Vec3 n = Vec3(0.2, -1.1, 0.8);
    const Complex dl = dl_kernel(kappa, rv, n, false);
    const double rn = rv.dot(n);
    const double rr = rv.norm();
    const Complex dl_fact(rn / (rr * rr * rr) * dl_real_cofactor(kappa, rr),
                          rn / (rr * rr) * dl_imag_cofactor(kappa, rr));
    CHECK(std::abs(dl - dl_fact / (4.0 * kPi)) <= 1e-15 * std::abs(dl) + 1e-18);
  }
}

TEST_CASE("reciprocity and series accuracy") {
  // single layer depends on r only: symmetric in x, y by construction
  CHECK(sl_kernel(1.3, 0.77) == sl_kernel(1.3, 0.77));
  // series branch agrees with the direct formula at the threshold
  const double kappa = 3.0;
  for (double r : {3.3e-4, 3.4e-4}) {  // straddles u = 1e-3
    CHECK(sl_imag_smooth(kappa, r) == doctest::Approx(std::sin(kappa * r) / r).epsilon(1e-13));
    CHECK(dl_imag_cofactor(kappa, r) ==
          doctest::Approx(std::sin(kappa * r) / r - kappa * std::cos(kappa * r)).epsilon(1e-9));
  }
}
