#pragma once

#include <achieveset/classify.hpp>
#include <achieveset/sequence.hpp>
#include <achieveset/subsum.hpp>

#include <optional>
#include <string>
#include <vector>

namespace achieveset {

// --- generators -------------------------------------------------------

SummableSequence geometric(const Rational& q);
SummableSequence guthrie_nymann();
SummableSequence jones_x(const Rational& q);
SummableSequence jones_y(const Rational& q);
SummableSequence exp_mixture(const std::vector<Rational>& betas,
                             const std::vector<Enclosure>& ratios);
SummableSequence pow_mixture(const std::vector<Rational>& betas,
                             const std::vector<Rational>& exponents);
SummableSequence jones_x_combination(const std::vector<Rational>& betas,
                                     const std::vector<Rational>& qs);
SummableSequence jones_y_combination(const std::vector<Rational>& betas,
                                     const std::vector<Rational>& qs);

// k-th basis sequence of the dyadic round-robin construction (m progressions)
SummableSequence spaceability_sequence(long progressions, long k);

struct SpaceabilityCombination {
  SummableSequence seq;
  ClosedInterval predicted;  // [sum min(t,0), sum max(t,0)]
};
SpaceabilityCombination spaceability_combine(const std::vector<Rational>& t,
                                             std::optional<long> progressions = std::nullopt);

struct GlidingHump {
  SummableSequence seq;       // finite truncation of sum_k x_k / 2^(k-1)
  ClosedInterval predicted;   // [min E_1, max E_1]
  Rational density_bound;     // (1+eps_K)/2^K + 2 eps_{K-1} (for K >= 2 blocks)
  std::vector<long> block_ends;  // sequence index after each block
};
GlidingHump gliding_hump(const std::vector<std::vector<Rational>>& blocks,
                         const std::vector<Rational>& epsilons,
                         const std::vector<long>& offsets = {},
                         const Rational& tolerance = Rational(0));

// --- paper-specific verifiers ------------------------------------------

struct EqCheckRow {
  long n = 0;
  Rational lhs;
  Rational rhs;
  bool holds = false;
};

struct EqCheckReport {
  std::vector<EqCheckRow> rows;
  bool all_rows_hold = false;
  bool limit_holds = false;       // the limiting-ratio verdict
  std::optional<bool> holds_for_all_n;  // certified all-n verdict when decidable
};

// eq (1): 2|g_n| > 9 sum_{k>n} |g_k|, g_n = sum_i betas[i] qs[i]^n
EqCheckReport eq1_check(const std::vector<Rational>& betas, const std::vector<Rational>& qs,
                        long n_from, long n_to);
// eq (2): |g_n| <= 5 sum_{k>n} |g_k|
EqCheckReport eq2_check(const std::vector<Rational>& betas, const std::vector<Rational>& qs,
                        long n_from, long n_to);

struct InclusionReport {
  bool digit_table_ok = false;  // every v in {2..7} is a subset sum of {4,3,2}
  std::vector<std::pair<int, std::vector<int>>> digit_table;  // v -> chosen digit indices
  bool one_not_representable = false;  // sanity: 1 is not a subset sum
  bool translate_subset_ok = false;    // translate(inner(y), 2G) subset of outer(x)
  bool samples_ok = false;             // sampled digit re-encodings land in inner(x)
  long depth = 0;
};

// Verifies 2*sum(g) + E(y) subset of E(x) evidence for the Jones combination
// with the given parameters (eq1/eq2 must hold; throws otherwise).
InclusionReport inclusion_check(const std::vector<Rational>& betas,
                                const std::vector<Rational>& qs, long depth);

struct GlidingHumpReport {
  bool density_ok = false;       // every witness point within density_bound of inner
  Rational density_achieved;
  bool outer_containment_ok = false;  // predicted inside outer at proper block boundaries
};
GlidingHumpReport verify_gliding_hump(const GlidingHump& gh);

// subset sums of {4,3,2} (indices into that digit vector) realizing v, if any
std::optional<std::vector<int>> decompose_digit(int v);

}  // namespace achieveset
