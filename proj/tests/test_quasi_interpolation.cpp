#include <doctest.h>

#include <cmath>
#include <random>

#include "igabem/bspline.hpp"
#include "igabem/quasi_interpolation.hpp"

using namespace igabem;

namespace {

double eval_tensor_spline(const KnotVector& k1, const KnotVector& k2,
                          const Eigen::MatrixXd& coeffs, double t1, double t2) {
  const auto b1 = eval_basis(k1, t1);
  const auto b2 = eval_basis(k2, t2);
  double s = 0.0;
  for (int c1 = 0; c1 <= k1.degree(); ++c1) {
    const int i1 = b1.span - k1.degree() + c1;
    if (i1 < 0 || i1 >= coeffs.rows()) continue;
    for (int c2 = 0; c2 <= k2.degree(); ++c2) {
      const int i2 = b2.span - k2.degree() + c2;
      if (i2 < 0 || i2 >= coeffs.cols()) continue;
      s += coeffs(i1, i2) * b1.values[c1] * b2.values[c2];
    }
  }
  return s;
}

Eigen::MatrixXd sample_grid(const QiOperator& op, const std::function<double(double, double)>& f) {
  const auto x1 = op.op1().breakpoints_on(op.domain().a1, op.domain().b1);
  const auto x2 = op.op2().breakpoints_on(op.domain().a2, op.domain().b2);
  Eigen::MatrixXd F(x1.size(), x2.size());
  for (size_t i = 0; i < x1.size(); ++i)
    for (size_t j = 0; j < x2.size(); ++j) F(i, j) = f(x1[i], x2[j]);
  return F;
}

double sup_error(const QiOperator& op, const std::function<double(double, double)>& f) {
  const Eigen::MatrixXd lambda = op.apply_grid(sample_grid(op, f));
  const KnotVector k1 = op.knots1(), k2 = op.knots2();
  double err = 0.0;
  const int m = 60;
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= m; ++j) {
      const double t1 = op.domain().a1 + op.domain().size1() * i / m;
      const double t2 = op.domain().a2 + op.domain().size2() * j / m;
      err = std::max(err, std::abs(eval_tensor_spline(k1, k2, lambda, t1, t2) - f(t1, t2)));
    }
  }
  return err;
}

}  // namespace

TEST_CASE("constant and linear reproduction") {
  QiOperator op(2, 2, 9, 9, Rect{0, 1, 0, 1});
  SUBCASE("f == 1 gives unit coefficients") {
    const Eigen::MatrixXd lambda = op.apply_grid(sample_grid(op, [](double, double) { return 1.0; }));
    CHECK((lambda.array() - 1.0).abs().maxCoeff() < 1e-14);
  }
  SUBCASE("f == t1 is reproduced pointwise") {
    CHECK(sup_error(op, [](double t1, double) { return t1; }) < 1e-13);
  }
}

TEST_CASE("spline space projector") {
  for (int p : {1, 2, 3, 4}) {
    for (int nu : {2 * p + 1, 13, 16}) {
      if (nu < p + 2) continue;
      QiOperator1D op(p, nu);
      const KnotVector kv = op.knots_on(0.0, 1.0);
      std::mt19937 rng(100 + p + nu);
      std::normal_distribution<double> gauss;
      Eigen::VectorXd coeffs(kv.num_basis());
      for (int i = 0; i < coeffs.size(); ++i) coeffs[i] = gauss(rng);
      // sample the spline at the breakpoints, apply, compare coefficients
      const auto x = op.breakpoints_on(0.0, 1.0);
      Eigen::VectorXd f(nu);
      for (int i = 0; i < nu; ++i) {
        const auto bv = eval_basis(kv, x[i]);
        double s = 0.0;
        for (int c = 0; c <= p; ++c) {
          const int idx = bv.span - p + c;
          if (idx >= 0 && idx < coeffs.size()) s += coeffs[idx] * bv.values[c];
        }
        f[i] = s;
      }
      const Eigen::VectorXd lambda = op.weights().transpose() * f;
      CAPTURE(p);
      CAPTURE(nu);
      CHECK((lambda - coeffs).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("approximation power on a smooth function") {
  auto f = [](double t1, double t2) { return std::sin(3.0 * t1) * std::cos(2.0 * t2); };
  SUBCASE("error ratio between 9 and 17 breakpoints is about 2^(p+1)") {
    QiOperator coarse(2, 2, 9, 9, Rect{0, 1, 0, 1});
    QiOperator fine(2, 2, 17, 17, Rect{0, 1, 0, 1});
    const double ratio = sup_error(coarse, f) / sup_error(fine, f);
    CHECK(ratio > 8.0 / 1.5);
    CHECK(ratio < 8.0 * 1.5);
  }
  SUBCASE("observed order at least p + 0.7") {
    for (int p : {2, 3}) {
      const double e1 = sup_error(QiOperator(p, p, 9, 9, Rect{0, 1, 0, 1}), f);
      const double e2 = sup_error(QiOperator(p, p, 17, 17, Rect{0, 1, 0, 1}), f);
      const double e3 = sup_error(QiOperator(p, p, 33, 33, Rect{0, 1, 0, 1}), f);
      const double slope = 0.5 * (std::log2(e1 / e2) + std::log2(e2 / e3));
      CAPTURE(p);
      CHECK(slope >= p + 0.7);
    }
  }
}

TEST_CASE("apply semantics") {
  QiOperator op(2, 2, 7, 7, Rect{0.25, 0.75, 0.5, 1.0});
  SUBCASE("zero samples give zero coefficients") {
    const Eigen::VectorXd lambda = op.apply(Eigen::VectorXd(Eigen::VectorXd::Zero(op.num_samples())));
    CHECK(lambda.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("linearity") {
    std::mt19937 rng(5);
    std::normal_distribution<double> gauss;
    Eigen::VectorXd f(op.num_samples()), g(op.num_samples());
    for (int i = 0; i < f.size(); ++i) {
      f[i] = gauss(rng);
      g[i] = gauss(rng);
    }
    const Eigen::VectorXd lhs = op.apply(Eigen::VectorXd(2.0 * f - 3.0 * g));
    const Eigen::VectorXd rhs = 2.0 * op.apply(f) - 3.0 * op.apply(g);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("complex samples are handled componentwise") {
    std::mt19937 rng(6);
    std::normal_distribution<double> gauss;
    VectorXc f(op.num_samples());
    for (int i = 0; i < f.size(); ++i) f[i] = Complex(gauss(rng), gauss(rng));
    const VectorXc lambda = op.apply(f);
    const Eigen::VectorXd re = op.apply(Eigen::VectorXd(f.real()));
    const Eigen::VectorXd im = op.apply(Eigen::VectorXd(f.imag()));
    CHECK((lambda.real() - re).cwiseAbs().maxCoeff() == 0.0);
    CHECK((lambda.imag() - im).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("dimension mismatch raises") {
    CHECK_THROWS_AS(op.apply(Eigen::VectorXd(Eigen::VectorXd::Zero(5))), StructureError);
  }
  SUBCASE("too few breakpoints rejected") { CHECK_THROWS_AS(QiOperator1D(3, 4), ConfigError); }
}
