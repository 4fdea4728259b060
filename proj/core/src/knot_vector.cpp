#include "igabem/knot_vector.hpp"

#include <algorithm>
#include <cmath>

namespace igabem {

namespace {
constexpr double kKnotTol = 1e-14;
}

KnotVector::KnotVector(std::vector<double> entries, int degree)
    : entries_(std::move(entries)), degree_(degree) {
  if (degree_ < 0) throw StructureError("knot vector: negative degree");
  const int n = static_cast<int>(entries_.size());
  if (n < 2 * (degree_ + 1)) throw StructureError("knot vector: too few knots for degree");
  for (int i = 1; i < n; ++i) {
    if (entries_[i] < entries_[i - 1]) throw StructureError("knot vector: entries not nondecreasing");
  }
  if (entries_.front() < -kKnotTol || entries_.back() > 1.0 + kKnotTol)
    throw StructureError("knot vector: entries outside [0,1]");
  for (int i = 0; i <= degree_; ++i) {
    if (entries_[i] != entries_.front() || entries_[n - 1 - i] != entries_.back())
      throw StructureError("knot vector: not clamped (end multiplicity < degree+1)");
  }
  // interior multiplicity bound
  int run = 1;
  for (int i = degree_ + 1; i < n - degree_ - 1; ++i) {
    run = (entries_[i] == entries_[i - 1]) ? run + 1 : 1;
    if (run > degree_ + 1) throw StructureError("knot vector: interior multiplicity exceeds degree+1");
  }
}

KnotVector KnotVector::uniform_clamped(int degree, int spans, double a, double b) {
  if (spans < 1) throw StructureError("uniform_clamped: need at least one span");
  std::vector<double> t;
  t.reserve(static_cast<size_t>(spans + 1 + 2 * degree));
  for (int i = 0; i <= degree; ++i) t.push_back(a);
  for (int i = 1; i < spans; ++i) t.push_back(a + (b - a) * static_cast<double>(i) / spans);
  for (int i = 0; i <= degree; ++i) t.push_back(b);
  return KnotVector(std::move(t), degree);
}

KnotVector KnotVector::from_breakpoints(int degree, const std::vector<double>& breaks,
                                        const std::vector<int>& interior_mult) {
  if (breaks.size() < 2) throw StructureError("from_breakpoints: need at least two breakpoints");
  if (interior_mult.size() + 2 != breaks.size())
    throw StructureError("from_breakpoints: multiplicity list size mismatch");
  std::vector<double> t;
  for (int i = 0; i <= degree; ++i) t.push_back(breaks.front());
  for (size_t k = 1; k + 1 < breaks.size(); ++k) {
    for (int r = 0; r < interior_mult[k - 1]; ++r) t.push_back(breaks[k]);
  }
  for (int i = 0; i <= degree; ++i) t.push_back(breaks.back());
  return KnotVector(std::move(t), degree);
}

int KnotVector::find_span(double t) const {
  const int n = num_basis();
  // first/last nonempty span indices
  int lo = degree_;
  while (lo < n - 1 && entries_[lo + 1] == entries_[lo]) ++lo;
  int hi = n - 1;
  while (hi > degree_ && entries_[hi + 1] == entries_[hi]) --hi;
  if (t >= entries_[static_cast<size_t>(n)]) return hi;
  if (t <= entries_[static_cast<size_t>(degree_)]) return lo;
  auto it = std::upper_bound(entries_.begin(), entries_.end(), t);
  int span = static_cast<int>(it - entries_.begin()) - 1;
  return std::clamp(span, lo, hi);
}

std::vector<double> KnotVector::breakpoints() const {
  std::vector<double> b;
  for (double v : entries_) {
    if (b.empty() || v > b.back()) b.push_back(v);
  }
  return b;
}

std::vector<int> KnotVector::nonempty_spans() const {
  std::vector<int> s;
  for (int i = degree_; i < num_basis(); ++i) {
    if (entries_[i + 1] > entries_[i]) s.push_back(i);
  }
  return s;
}

double KnotVector::max_span() const {
  double h = 0.0;
  for (size_t i = 1; i < entries_.size(); ++i) h = std::max(h, entries_[i] - entries_[i - 1]);
  return h;
}

std::vector<double> KnotVector::greville(bool improved, double omega) const {
  if (improved && (omega <= 0.0 || omega >= 1.0))
    throw ConfigError("greville: omega must lie in (0,1)");
  const int n = num_basis();
  std::vector<double> xi(static_cast<size_t>(n));
  if (degree_ == 0) {
    for (int i = 0; i < n; ++i) xi[i] = 0.5 * (entries_[i] + entries_[i + 1]);
  } else {
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int m = 1; m <= degree_; ++m) s += entries_[i + m];
      xi[i] = s / degree_;
    }
  }
  if (improved && n >= 2 && degree_ >= 1) {
    xi[0] = xi[0] + omega * (xi[1] - xi[0]);
    xi[n - 1] = xi[n - 1] - omega * (xi[n - 1] - xi[n - 2]);
  }
  return xi;
}

}  // namespace igabem
