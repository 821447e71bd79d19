#pragma once

#include <achieveset/rational.hpp>

#include <utility>
#include <vector>

namespace achieveset {

// Closed interval [a, b] with rational endpoints; degenerate points allowed.
struct ClosedInterval {
  Rational a;
  Rational b;
};

inline bool operator==(const ClosedInterval& x, const ClosedInterval& y) {
  return x.a == y.a && x.b == y.b;
}

// Canonical finite union of disjoint closed intervals: sorted, maximally
// merged (b_i < a_{i+1} strictly), nonempty. The computable slice of the
// hyperspace of nonempty compact subsets of R.
class IntervalUnion {
 public:
  // Canonicalizes arbitrary input intervals. Throws on empty input or a > b.
  static IntervalUnion normalize(std::vector<ClosedInterval> raw);
  // Union of degenerate points. Throws on empty input.
  static IntervalUnion points(const std::vector<Rational>& pts);
  static IntervalUnion single(const Rational& a, const Rational& b);
  static IntervalUnion point(const Rational& p);

  const std::vector<ClosedInterval>& intervals() const { return ivs_; }
  std::size_t component_count() const { return ivs_.size(); }
  const Rational& min() const { return ivs_.front().a; }
  const Rational& max() const { return ivs_.back().b; }
  ClosedInterval hull() const { return {min(), max()}; }

  bool operator==(const IntervalUnion& o) const { return ivs_ == o.ivs_; }
  bool operator!=(const IntervalUnion& o) const { return !(*this == o); }

 private:
  IntervalUnion() = default;
  std::vector<ClosedInterval> ivs_;
  friend IntervalUnion translate(const IntervalUnion&, const Rational&);
  friend IntervalUnion scale(const IntervalUnion&, const Rational&);
  friend IntervalUnion set_union(const IntervalUnion&, const IntervalUnion&);
  friend IntervalUnion fatten(const IntervalUnion&, const Rational&, const Rational&);
};

IntervalUnion translate(const IntervalUnion& A, const Rational& c);
// scale by c; c = 0 collapses to {[0,0]}
IntervalUnion scale(const IntervalUnion& A, const Rational& c);
IntervalUnion set_union(const IntervalUnion& A, const IntervalUnion& B);
// Minkowski sum with [lo, hi] (lo <= hi required)
IntervalUnion fatten(const IntervalUnion& A, const Rational& lo, const Rational& hi);

// exact subset test: B subset of A
bool contains(const IntervalUnion& A, const IntervalUnion& B);
bool contains_point(const IntervalUnion& A, const Rational& t);

// distance from point t to the set A
Rational point_distance(const Rational& t, const IntervalUnion& A);

// max_{t in A} d(t, B); extrema occur at endpoints of A or at A-points
// nearest to gap midpoints of B
Rational directed_hausdorff(const IntervalUnion& A, const IntervalUnion& B);
Rational hausdorff(const IntervalUnion& A, const IntervalUnion& B);

// Largest open gap of A within window [a, b]. 0 if A covers the window's
// intersection with A's gap structure. Throws if the window misses A's hull.
Rational max_gap(const IntervalUnion& A, const Rational& wa, const Rational& wb);

}  // namespace achieveset
