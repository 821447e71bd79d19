#pragma once

#include <achieveset/interval_union.hpp>
#include <achieveset/orbit.hpp>
#include <achieveset/sequence.hpp>

#include <optional>
#include <string>
#include <variant>

namespace achieveset {

enum class Verdict { FiniteUnionOfIntervals, CantorLike, Cantorval, Undetermined };

std::string to_string(Verdict v);

// How the finite per-n verification extends to all larger n.
enum class Continuation {
  BlockSelfSimilar,   // single-ratio block pattern: comparisons are block-independent
  GeomDominance,      // leading geometric component dominates from cont_from on
  PowerIntegral,      // integral-sandwich dominance from cont_from on
  SpaceabilityCycle,  // dyadic round-robin: comparisons are cycle-independent
};

// Two-phase Kakeya certificate: the comparison (strict |x(n)| > tail for the
// Cantor test, |x(n)| <= tail for the interval test) is verified exactly for
// n in [n0, checked_to] and holds for n > checked_to by the continuation
// argument, itself valid from cont_from <= checked_to + 1.
struct KakeyaCert {
  long n0 = 1;
  long checked_to = 0;
  Continuation continuation = Continuation::BlockSelfSimilar;
  long cont_from = 1;
};

struct CantorCert {
  KakeyaCert k;
};
struct IntervalCert {
  KakeyaCert k;
};

// Condition (i) witness: an arithmetic run a, a+s, ..., a+s*len of per-block
// subset sums, available in every block from from_block on; the greedy digit
// argument yields the whole interval witness inside E(x).
struct DigitRunWitness {
  long from_block = 0;
  Rational base;
  Rational step;
  long len = 0;
  // digit-index subsets realizing base + i*step for i = 0..len
  std::vector<std::vector<int>> decomposition;
  ClosedInterval witness{Rational(0), Rational(0)};
};

// Condition (i) witness for the Guthrie-Nymann digit pattern (digits
// proportional to (3,2), ratio 1/4): scale*[2/3,1] lies in E(x). The
// containment is an imported theorem whose premises are re-checked; the
// witness additionally carries unconditional orbit membership proofs for a
// rational grid spanning it, and an enumeration density exhibition.
struct ImportedPatternWitness {
  Rational scale;
  long from_block = 0;
  ClosedInterval witness{Rational(0), Rational(0)};
  std::vector<Rational> grid;  // canonical grid in [2/3, 1]
  std::vector<OrbitWitness> grid_proofs;
  long density_depth = 0;
  Rational density_bound;  // max distance from witness points to inner at density_depth
};

using IntervalWitnessVariant = std::variant<DigitRunWitness, ImportedPatternWitness>;

struct CantorvalCert {
  // condition (ii): |x(n)| > tail(n) at these in-block positions (0-based)
  // for every block >= ii_from_block; verified exactly through block
  // ii_checked_block, continued by ii_continuation
  std::vector<int> ii_positions;
  long ii_from_block = 0;
  long ii_checked_block = 0;
  Continuation ii_continuation = Continuation::BlockSelfSimilar;
  // condition (iii)
  long monotone_from = 1;
  // condition (i)
  IntervalWitnessVariant interval;
};

using Certificate = std::variant<CantorCert, IntervalCert, CantorvalCert>;

struct Classification {
  Verdict verdict = Verdict::Undetermined;
  long horizon = 0;
  std::optional<Certificate> certificate;
  std::string diagnostic;
};

// Theorem 1(2)-style test: strict term-over-tail dominance from some n0 <=
// horizon with a certified closed-form continuation. Absence is not a proof.
std::optional<CantorCert> kakeya_cantor_test(const SummableSequence& s, long horizon);

// Theorem 1(3)-style test: |x(n)| <= tail(n) from some n0 <= horizon with a
// certified continuation.
std::optional<IntervalCert> kakeya_interval_test(const SummableSequence& s, long horizon);

struct CantorvalOutcome {
  enum class Status { Certified, NoCertificate, PreconditionFailed };
  Status status = Status::NoCertificate;
  std::optional<CantorvalCert> cert;
  std::string detail;
};

CantorvalOutcome cantorval_test(const SummableSequence& s, long horizon, long depth);

// Runs the three tests; throws std::invalid_argument on c00 input.
Classification classify(const SummableSequence& s, long horizon = 200, long depth = 20);

}  // namespace achieveset
