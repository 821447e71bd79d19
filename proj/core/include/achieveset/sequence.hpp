#pragma once

#include <achieveset/enclosure.hpp>
#include <achieveset/geom_poly.hpp>

#include <map>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

namespace achieveset {

// x(n) = values[n-1] for n <= size, 0 beyond. The c00 case.
struct ExplicitFiniteData {
  std::vector<Rational> values;
};

// x(n) = sum_i betas[i] * ratios[i]^n, ratios certified inside (0,1),
// pairwise distinct. Ratios may be exact rationals or rational-endpoint
// enclosures of irrational values such as q^r.
struct ExpMixtureData {
  std::vector<Rational> betas;
  std::vector<Enclosure> ratios;
};

// x(n) = sum_i betas[i] * n^(-exponents[i]), exponents rational > 1,
// ascending, pairwise distinct.
struct PowMixtureData {
  std::vector<Rational> betas;
  std::vector<Rational> exponents;
};

// Block patterns: with L = digits.size() and g(j) = sum_i betas[i]*qs[i]^j,
// x(j*L + p + 1) = digits[p] * g(j) for j >= 0, 0 <= p < L.
// Covers the Guthrie-Nymann sequence (digits (3/4,1/2), q=1/4), the Jones
// families x_q (digits (4,3,2)) and y_q (digits (1,1,1,1,1)), and their
// linear combinations over different q.
struct BlockMixtureData {
  std::vector<Rational> digits;
  std::vector<Rational> betas;
  std::vector<Rational> qs;  // descending, distinct, in (0,1)
};

// y = sum_i t[i] * x_i where x_i(k) = 2^-j on the arithmetic progression
// {i, i+m, i+2m, ...} (j-th element), zero elsewhere; m = progressions.
struct SpaceabilityData {
  std::vector<Rational> t;
  long progressions = 0;
};

class SummableSequence;

// Generic linear combination fallback when no kind-level reduction applies.
struct CombinedData {
  std::vector<Rational> betas;
  std::vector<std::shared_ptr<const SummableSequence>> parts;
};

using KindData = std::variant<ExplicitFiniteData, ExpMixtureData, PowMixtureData,
                              BlockMixtureData, SpaceabilityData, CombinedData>;

struct SignProfile {
  // term(n) >= 0 for all n >= nonneg_from (when known)
  std::optional<long> nonneg_from;
  // |term(n)| >= |term(n+1)| for all n >= monotone_from (when known)
  std::optional<long> monotone_from;
};

class SummableSequence {
 public:
  explicit SummableSequence(KindData kind);

  const KindData& kind() const { return kind_; }
  bool is_absolute() const { return absolute_; }
  const std::map<long, Rational>& overrides() const { return overrides_; }

  // enclosure of x(n), degenerate for rational-parameter kinds; n >= 1
  Enclosure term(long n) const;
  // exact value when the term enclosure is a point
  std::optional<Rational> exact_term(long n) const;

  // enclosure of sum_{i>n} |x(i)|; n >= 0
  Enclosure tail_sum_abs(long n) const;
  // enclosure of sum_{i>n} x(i)
  Enclosure tail_signed(long n) const;
  Enclosure total_sum() const { return tail_signed(0); }

  SignProfile sign_profile() const;

  // true when the sequence provably has only finitely many nonzero terms
  bool is_c00() const;

  SummableSequence with_override(long n, const Rational& v) const;
  SummableSequence as_absolute() const;

 private:
  KindData kind_;
  std::map<long, Rational> overrides_;
  bool absolute_ = false;

  Enclosure base_term(long n) const;
  Enclosure base_tail_abs(long n) const;
  Enclosure base_tail_signed(long n) const;
};

// --- seqmodel operations ---

// sum_i betas[i] * seqs[i], reduced to a structured kind when possible
// (mixtures merge, block mixtures over the same digit pattern merge, explicit
// finite sequences combine pointwise). Throws on length mismatch / empty.
SummableSequence linear_combination(const std::vector<SummableSequence>& seqs,
                                    const std::vector<Rational>& betas);

// prod_i seqs[i]^exponents[i] pointwise; inputs must be all ExpMixture or all
// PowMixture. The derived ratios (resp. exponents) are recorded in the result
// and must be pairwise distinct (certified), else this throws.
SummableSequence power_product(const std::vector<SummableSequence>& seqs,
                               const std::vector<unsigned long>& exponents);

SummableSequence scale_sequence(const SummableSequence& s, const Rational& c);

// Block-level value polynomial g(j) for BlockMixture kinds.
GeomPoly block_poly(const BlockMixtureData& d);

}  // namespace achieveset
