#pragma once

#include <achieveset/enclosure.hpp>

#include <optional>
#include <vector>

namespace achieveset {

// P(n) = sum_i c_i * rho_i^n over distinct ratios rho_i in (0,1), c_i != 0,
// sorted by descending ratio. The single machinery behind every eventual
// term-vs-tail comparison: eventual sign with an effective index (the leading
// ratio dominates the rest from an explicitly computed n on), exact signed
// tails via geometric closed forms, and absolute tails via sign stability.
class GeomPoly {
 public:
  // Merges coefficients on identical exact ratios, drops zero coefficients,
  // sorts descending. Returns nullopt when ratios cannot be certified
  // pairwise distinct (overlapping non-identical enclosures) or ordered.
  static std::optional<GeomPoly> make(std::vector<Rational> coeffs,
                                      std::vector<Enclosure> ratios);

  bool is_zero() const { return c_.empty(); }
  std::size_t terms() const { return c_.size(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  const std::vector<Enclosure>& ratios() const { return rho_; }
  bool all_exact() const;

  Enclosure value(long n) const;

  struct EventualSign {
    int sign;   // -1, 0, +1
    long from;  // sign is provably constant (and P nonzero unless sign==0) for n >= from
  };
  // nullopt when enclosure widths prevent certification within the search cap
  std::optional<EventualSign> eventual_sign() const;

  // Smallest n0 <= limit with P(n) >= 0 (or > 0 when strict) certified for
  // ALL n >= n0; nullopt if eventually negative or not certifiable.
  std::optional<long> nonneg_from(long limit, bool strict) const;

  // sum_{k>n} P(k) = sum_i c_i rho_i^{n+1} / (1 - rho_i), exact for exact ratios
  Enclosure tail_signed(long n) const;
  // enclosure of sum_{k>n} |P(k)|
  Enclosure tail_abs(long n) const;

  // P scaled by rational factor / negated
  GeomPoly scaled(const Rational& f) const;

 private:
  GeomPoly() = default;
  std::vector<Rational> c_;
  std::vector<Enclosure> rho_;
};

}  // namespace achieveset
