#pragma once

#include <vector>

#include "igabem/types.hpp"

namespace igabem {

/// Clamped univariate knot vector with entries in [0,1] (or a sub-interval of it).
///
/// First and last knots carry multiplicity degree+1; interior multiplicities
/// never exceed degree+1.  The vector owns its degree since every consumer
/// (evaluation, Greville, integrals) needs the pair.
class KnotVector {
 public:
  KnotVector(std::vector<double> entries, int degree);

  /// Uniform clamped vector with `spans` equal-length spans on [a,b].
  static KnotVector uniform_clamped(int degree, int spans, double a = 0.0, double b = 1.0);

  /// Clamped vector from breakpoints, each interior one repeated `mult[i]` times.
  static KnotVector from_breakpoints(int degree, const std::vector<double>& breaks,
                                     const std::vector<int>& interior_mult);

  int degree() const { return degree_; }
  int size() const { return static_cast<int>(entries_.size()); }
  double operator[](int i) const { return entries_[static_cast<size_t>(i)]; }
  const std::vector<double>& entries() const { return entries_; }

  double front() const { return entries_.front(); }
  double back() const { return entries_.back(); }

  /// Number of B-spline basis functions: |T| - degree - 1.
  int num_basis() const { return size() - degree_ - 1; }

  /// Index i of the knot span [t_i, t_{i+1}) containing t; the last nonempty
  /// span is closed on the right.  For t outside [front, back] returns the
  /// first/last nonempty span (polynomial extension of the end pieces).
  int find_span(double t) const;

  /// Distinct knot values.
  std::vector<double> breakpoints() const;

  /// Indices i of nonempty spans [t_i, t_{i+1}).
  std::vector<int> nonempty_spans() const;

  /// Largest span length.
  double max_span() const;

  /// Greville abscissas: averages of `degree` consecutive interior knots.
  /// For degree 0 the convention is span midpoints.  With `improved`, the
  /// first and last abscissas are shifted inward by the fraction omega of the
  /// gap to their neighbor; omega must lie in (0,1).
  std::vector<double> greville(bool improved = false, double omega = 0.5) const;

  bool operator==(const KnotVector& o) const {
    return degree_ == o.degree_ && entries_ == o.entries_;
  }

 private:
  std::vector<double> entries_;
  int degree_;
};

}  // namespace igabem
