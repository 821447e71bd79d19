#pragma once

#include <achieveset/interval_union.hpp>
#include <achieveset/sequence.hpp>

#include <optional>

namespace achieveset {

// Certified sandwich for the achievement set E(x): inner is the exact set of
// depth-n prefix subsums (a finite set, kept as degenerate intervals merged
// only on equality), outer = fatten(inner, -tail_minus, tail_plus). The
// Hausdorff contract d_H(E(x), inner) <= error_bound comes from the Lipschitz
// bound d_H(E(x), E(y)) <= ||x - y||_1 applied to the truncation.
struct SubsumApproximation {
  long depth = 0;
  IntervalUnion inner = IntervalUnion::point(Rational(0));
  IntervalUnion outer = IntervalUnion::point(Rational(0));
  Rational tail_plus;   // upper bound on sum_{i>n} x+(i) (plus unresolved prefix mass)
  Rational tail_minus;  // upper bound on sum_{i>n} x-(i)
  Rational error_bound; // upper bound on sum_{i>n} |x(i)| (plus unresolved prefix mass)
  bool exact = true;            // every prefix term was an exact rational
  bool budget_exhausted = false;
};

// All 2^n subset sums of x(1..n), sorted with duplicates removed.
// Requires exact rational prefix terms and n <= 24.
std::vector<Rational> enumerate_bruteforce(const SummableSequence& seq, long n);

SubsumApproximation approximate(const SummableSequence& seq, long depth,
                                std::size_t max_points = std::size_t(1) << 22);

// Smallest depth with error_bound <= target_eps, capped by the point budget;
// budget_exhausted is set when the cap bites first.
SubsumApproximation refine(const SummableSequence& seq, const Rational& target_eps,
                           std::size_t max_points = std::size_t(1) << 22);

struct OracleReport {
  bool pass = false;
  long depth = 0;
  std::optional<Rational> first_discrepancy;
};

// Asserts inner of approximate(seq, n) equals the normalized brute-force
// enumeration; the anti-regression oracle.
OracleReport oracle_compare(const SummableSequence& seq, long n);

}  // namespace achieveset
