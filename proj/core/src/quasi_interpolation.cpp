#include "igabem/quasi_interpolation.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>

#include "igabem/bspline.hpp"

namespace igabem {

QiOperator1D::QiOperator1D(int degree, int num_breakpoints) : p_(degree), nu_(num_breakpoints) {
  if (p_ < 0) throw ConfigError("QI: negative degree");
  if (nu_ < p_ + 2) throw ConfigError("QI: needs at least degree+2 breakpoints");

  // Span breakpoints at every second sample; fall back to a single span when
  // that would leave more coefficients than samples.
  std::vector<int> kb_idx{0};
  while (kb_idx.back() < nu_ - 1) kb_idx.push_back(std::min(kb_idx.back() + 2, nu_ - 1));
  int sigma = static_cast<int>(kb_idx.size()) - 1;
  if (sigma + p_ > nu_) {
    kb_idx = {0, nu_ - 1};
    sigma = 1;
  }
  knot_breaks_.resize(kb_idx.size());
  const double h = 1.0 / (nu_ - 1);
  for (size_t k = 0; k < kb_idx.size(); ++k) knot_breaks_[k] = kb_idx[k] * h;

  const KnotVector global = KnotVector::from_breakpoints(
      p_, knot_breaks_, std::vector<int>(knot_breaks_.size() - 2, 1));
  const int dim = global.num_basis();
  weights_ = Eigen::MatrixXd::Zero(nu_, dim);

  for (int j = 0; j < dim; ++j) {
    const int s_lo = std::max(0, j - p_);
    const int s_hi = std::min(sigma - 1, j);
    const int center = (s_lo + s_hi) / 2;

    int w0 = center, w1 = center;
    auto nsamples = [&] { return kb_idx[w1 + 1] - kb_idx[w0] + 1; };
    auto ldim = [&] { return p_ + (w1 - w0 + 1); };
    while (nsamples() < ldim()) {
      const bool can_left = w0 > 0, can_right = w1 < sigma - 1;
      if (!can_left && !can_right) throw StructureError("QI: window exhausted without full rank");
      if (can_left && (!can_right || center - w0 <= w1 - center)) --w0; else ++w1;
    }

    std::vector<double> win_breaks(knot_breaks_.begin() + w0, knot_breaks_.begin() + w1 + 2);
    const KnotVector local =
        KnotVector::from_breakpoints(p_, win_breaks, std::vector<int>(win_breaks.size() - 2, 1));
    const int nloc = local.num_basis();
    const int i0 = kb_idx[w0], i1 = kb_idx[w1 + 1];
    const int ns = i1 - i0 + 1;

    Eigen::MatrixXd coll = Eigen::MatrixXd::Zero(ns, nloc);
    for (int r = 0; r < ns; ++r) {
      const double t = (i0 + r) * h;
      const auto bv = eval_basis(local, t);
      for (int c = 0; c <= p_; ++c) {
        const int col = bv.span - p_ + c;
        if (col >= 0 && col < nloc) coll(r, col) = bv.values[c];
      }
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(coll);
    if (cod.rank() < nloc) throw StructureError("QI: sample pattern rank-deficient");
    const Eigen::MatrixXd pinv = cod.pseudoInverse();  // nloc x ns

    const double tau = 0.5 * (knot_breaks_[center] + knot_breaks_[center + 1]);
    const auto loc_ders = eval_basis_derivatives(local, tau, p_);
    Eigen::MatrixXd dloc = Eigen::MatrixXd::Zero(p_ + 1, nloc);
    for (int c = 0; c <= p_; ++c) {
      const int col = loc_ders.span - p_ + c;
      if (col >= 0 && col < nloc) dloc.col(col) = loc_ders.ders.col(c);
    }
    const Eigen::VectorXd dfix = deboor_fix_weights(global, j, tau);
    const Eigen::VectorXd row = (dfix.transpose() * dloc).transpose();  // nloc
    const Eigen::VectorXd w = pinv.transpose() * row;                   // ns
    for (int r = 0; r < ns; ++r) weights_(i0 + r, j) = w[r];
  }
}

KnotVector QiOperator1D::knots_on(double a, double b) const {
  std::vector<double> breaks(knot_breaks_.size());
  for (size_t k = 0; k < knot_breaks_.size(); ++k) breaks[k] = a + (b - a) * knot_breaks_[k];
  breaks.front() = a;
  breaks.back() = b;
  return KnotVector::from_breakpoints(p_, breaks, std::vector<int>(breaks.size() - 2, 1));
}

std::vector<double> QiOperator1D::breakpoints_on(double a, double b) const {
  std::vector<double> x(static_cast<size_t>(nu_));
  for (int i = 0; i < nu_; ++i) x[i] = a + (b - a) * static_cast<double>(i) / (nu_ - 1);
  return x;
}

std::shared_ptr<const QiOperator1D> QiOperator1D::cached(int degree, int num_breakpoints) {
  static std::map<std::pair<int, int>, std::shared_ptr<const QiOperator1D>> cache;
  static std::shared_mutex mutex;
  const std::pair<int, int> key{degree, num_breakpoints};
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto op = std::make_shared<const QiOperator1D>(degree, num_breakpoints);
  std::unique_lock lock(mutex);
  return cache.try_emplace(key, std::move(op)).first->second;
}

QiOperator::QiOperator(int p1, int p2, int nu1, int nu2, Rect domain)
    : op1_(QiOperator1D::cached(p1, nu1)), op2_(QiOperator1D::cached(p2, nu2)), domain_(domain) {}

std::vector<Vec2> QiOperator::sample_points() const {
  const auto x1 = op1_->breakpoints_on(domain_.a1, domain_.b1);
  const auto x2 = op2_->breakpoints_on(domain_.a2, domain_.b2);
  std::vector<Vec2> pts;
  pts.reserve(x1.size() * x2.size());
  for (double t1 : x1)
    for (double t2 : x2) pts.emplace_back(t1, t2);
  return pts;
}

Eigen::MatrixXd QiOperator::apply_grid(const Eigen::MatrixXd& samples) const {
  if (samples.rows() != op1_->num_breakpoints() || samples.cols() != op2_->num_breakpoints())
    throw StructureError("QI apply: sample grid dimension mismatch");
  return op1_->weights().transpose() * samples * op2_->weights();
}

Eigen::VectorXd QiOperator::apply(const Eigen::VectorXd& samples) const {
  const int n1 = op1_->num_breakpoints(), n2 = op2_->num_breakpoints();
  if (samples.size() != n1 * n2) throw StructureError("QI apply: sample vector dimension mismatch");
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> grid(
      samples.data(), n1, n2);
  Eigen::MatrixXd lambda = op1_->weights().transpose() * grid * op2_->weights();
  Eigen::VectorXd out(lambda.rows() * lambda.cols());
  for (int i = 0; i < lambda.rows(); ++i)
    for (int j = 0; j < lambda.cols(); ++j) out[i * lambda.cols() + j] = lambda(i, j);
  return out;
}

VectorXc QiOperator::apply(const VectorXc& samples) const {
  const Eigen::VectorXd re = apply(Eigen::VectorXd(samples.real()));
  const Eigen::VectorXd im = apply(Eigen::VectorXd(samples.imag()));
  return re + Complex(0.0, 1.0) * im;
}

}  // namespace igabem
