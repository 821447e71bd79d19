#include <achieveset/sequence.hpp>

#include <algorithm>
#include <stdexcept>

namespace achieveset {

namespace {

constexpr long kIndexCap = 1L << 22;

Enclosure npow_neg(long n, const Rational& p) {
  // n^(-p) for n >= 1, p > 0 rational; exact for integer p
  if (den(p) == 1) {
    long e = num(p).convert_to<long>();
    return Enclosure(Rational(Int(1), boost::multiprecision::pow(Int(n), static_cast<unsigned>(e))));
  }
  return pow_rational(Rational(n), -p, precision());
}

// enclosure of n^e for rational e (any sign), n >= 1
Enclosure npow(long n, const Rational& e) {
  if (e == 0) return Enclosure(Rational(1));
  if (den(e) == 1) {
    long k = num(e).convert_to<long>();
    return Enclosure(rpow(Rational(n), k));
  }
  return pow_rational(Rational(n), e, precision());
}

void validate_exp(const ExpMixtureData& d) {
  if (d.betas.size() != d.ratios.size())
    throw std::invalid_argument("ExpMixture: length mismatch");
  for (const auto& r : d.ratios)
    if (!(r.lo > 0 && r.hi < 1))
      throw std::invalid_argument("ExpMixture: ratio not certified inside (0,1)");
}

void validate_pow(const PowMixtureData& d) {
  if (d.betas.size() != d.exponents.size())
    throw std::invalid_argument("PowMixture: length mismatch");
  for (const auto& p : d.exponents)
    if (!(p > 1)) throw std::invalid_argument("PowMixture: exponent must exceed 1");
  for (std::size_t i = 0; i < d.exponents.size(); ++i)
    for (std::size_t j = i + 1; j < d.exponents.size(); ++j)
      if (d.exponents[i] == d.exponents[j])
        throw std::invalid_argument("PowMixture: exponents must be distinct");
}

void validate_block(const BlockMixtureData& d) {
  if (d.digits.empty()) throw std::invalid_argument("BlockMixture: empty digit pattern");
  if (d.betas.size() != d.qs.size())
    throw std::invalid_argument("BlockMixture: length mismatch");
  for (const auto& q : d.qs)
    if (!(q > 0 && q < 1)) throw std::invalid_argument("BlockMixture: q outside (0,1)");
  for (std::size_t i = 0; i < d.qs.size(); ++i)
    for (std::size_t j = i + 1; j < d.qs.size(); ++j)
      if (d.qs[i] == d.qs[j]) throw std::invalid_argument("BlockMixture: duplicate q");
}

void validate_spaceability(const SpaceabilityData& d) {
  if (d.t.empty()) throw std::invalid_argument("Spaceability: empty t");
  bool any = false;
  for (const auto& v : d.t) any = any || v != 0;
  if (!any) throw std::invalid_argument("Spaceability: zero combination excluded");
  if (d.progressions < static_cast<long>(d.t.size()))
    throw std::invalid_argument("Spaceability: progressions must cover support");
}

// index of first progression element > n, as a 0-based dyadic level count:
// progression i (1-based) = {i, i+m, i+2m, ...}; returns the number of its
// elements that are <= n
long consumed_count(long n, long i, long m) {
  if (n < i) return 0;
  return (n - i) / m + 1;
}

struct PowDominance {
  int sign;
  long from;
};

// Effective index from which the smallest-exponent component dominates the
// absolute sum of the rest: |b1| n^-p1 > sum_j |bj| n^-pj for all n >= from.
// Uses the per-component split h_j(n) = (m-1)|bj|/|b1| * n^(p1-pj), strictly
// decreasing, so one certified check extends to all larger n.
std::optional<PowDominance> pow_sign_stable(const PowMixtureData& d) {
  // assume exponents ascending after construction ordering
  std::size_t lead = 0;
  for (std::size_t i = 1; i < d.exponents.size(); ++i)
    if (d.exponents[i] < d.exponents[lead]) lead = i;
  if (d.betas.size() == 1) return PowDominance{sign_of(d.betas[0]), 1};
  long m1 = static_cast<long>(d.betas.size()) - 1;
  for (long n = 1; n <= kIndexCap; n = (n < 16 ? n + 1 : n * 2)) {
    bool ok = true;
    for (std::size_t j = 0; j < d.betas.size() && ok; ++j) {
      if (j == lead) continue;
      // (m-1)|bj| n^(p1-pj) < |b1|  (certified)
      Enclosure lhs = (Rational(m1) * abs(d.betas[j])) *
                      npow(n, d.exponents[lead] - d.exponents[j]);
      if (!(lhs.hi < abs(d.betas[lead]))) ok = false;
    }
    if (ok) return PowDominance{sign_of(d.betas[lead]), n};
  }
  return std::nullopt;
}

}  // namespace

SummableSequence::SummableSequence(KindData kind) : kind_(std::move(kind)) {
  std::visit(
      [](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ExpMixtureData>) validate_exp(d);
        if constexpr (std::is_same_v<T, PowMixtureData>) validate_pow(d);
        if constexpr (std::is_same_v<T, BlockMixtureData>) validate_block(d);
        if constexpr (std::is_same_v<T, SpaceabilityData>) validate_spaceability(d);
      },
      kind_);
}

Enclosure SummableSequence::base_term(long n) const {
  if (n < 1) throw std::invalid_argument("term: n must be >= 1");
  return std::visit(
      [&](const auto& d) -> Enclosure {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ExplicitFiniteData>) {
          if (n <= static_cast<long>(d.values.size())) return Enclosure(d.values[n - 1]);
          return Enclosure(Rational(0));
        } else if constexpr (std::is_same_v<T, ExpMixtureData>) {
          Enclosure acc{Rational(0)};
          for (std::size_t i = 0; i < d.betas.size(); ++i)
            acc = acc + d.betas[i] * pow(d.ratios[i], static_cast<unsigned long>(n));
          return acc;
        } else if constexpr (std::is_same_v<T, PowMixtureData>) {
          Enclosure acc{Rational(0)};
          for (std::size_t i = 0; i < d.betas.size(); ++i)
            acc = acc + d.betas[i] * npow_neg(n, d.exponents[i]);
          return acc;
        } else if constexpr (std::is_same_v<T, BlockMixtureData>) {
          long L = static_cast<long>(d.digits.size());
          long j = (n - 1) / L, p = (n - 1) % L;
          Rational g(0);
          for (std::size_t i = 0; i < d.betas.size(); ++i)
            g += d.betas[i] * rpow(d.qs[i], j);
          return Enclosure(d.digits[p] * g);
        } else if constexpr (std::is_same_v<T, SpaceabilityData>) {
          long m = d.progressions;
          long i = (n - 1) % m;
          long j = (n - 1) / m + 1;
          if (i < static_cast<long>(d.t.size()) && d.t[i] != 0)
            return Enclosure(d.t[i] * Rational(Int(1), Int(1) << j));
          return Enclosure(Rational(0));
        } else {
          const CombinedData& c = d;
          Enclosure acc{Rational(0)};
          for (std::size_t i = 0; i < c.betas.size(); ++i)
            acc = acc + c.betas[i] * c.parts[i]->term(n);
          return acc;
        }
      },
      kind_);
}

Enclosure SummableSequence::term(long n) const {
  Enclosure v = base_term(n);
  auto it = overrides_.find(n);
  if (it != overrides_.end()) v = Enclosure(it->second);
  if (absolute_) v = abs(v);
  return v;
}

std::optional<Rational> SummableSequence::exact_term(long n) const {
  Enclosure v = term(n);
  if (v.is_point()) return v.lo;
  return std::nullopt;
}

Enclosure SummableSequence::base_tail_abs(long n) const {
  return std::visit(
      [&](const auto& d) -> Enclosure {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ExplicitFiniteData>) {
          Rational s(0);
          for (long i = n + 1; i <= static_cast<long>(d.values.size()); ++i)
            s += abs(d.values[i - 1]);
          return Enclosure(s);
        } else if constexpr (std::is_same_v<T, ExpMixtureData>) {
          auto p = GeomPoly::make(d.betas, d.ratios);
          if (!p) {
            // distinctness not certified: triangle bound componentwise
            Enclosure up{Rational(0)};
            for (std::size_t i = 0; i < d.betas.size(); ++i) {
              Enclosure rn1 = pow(d.ratios[i], static_cast<unsigned long>(n + 1));
              Enclosure om(Rational(1) - d.ratios[i].hi, Rational(1) - d.ratios[i].lo);
              up = up + abs(d.betas[i]) * (rn1 / om);
            }
            return Enclosure(Rational(0), up.hi);
          }
          return p->tail_abs(n);
        } else if constexpr (std::is_same_v<T, PowMixtureData>) {
          auto dom = pow_sign_stable(d);
          auto sandwich = [&](std::size_t i, long nn) {
            // sum_{k>nn} k^-p in [ (nn+1)^(1-p)/(p-1), nn^(1-p)/(p-1) ]
            const Rational& p = d.exponents[i];
            Enclosure a = npow(nn + 1, Rational(1) - p);
            Enclosure b = npow(nn, Rational(1) - p);
            Rational inv = Rational(1) / (p - 1);
            return Enclosure(inv * a.lo, inv * b.hi);
          };
          if (dom && n >= dom->from - 1) {
            Enclosure acc{Rational(0)};
            for (std::size_t i = 0; i < d.betas.size(); ++i)
              acc = acc + d.betas[i] * sandwich(i, n);
            Enclosure t = dom->sign >= 0 ? acc : -acc;
            return Enclosure(rmax(Rational(0), t.lo), rmax(Rational(0), t.hi));
          }
          long K = dom ? dom->from - 1 : n;  // without dominance fall through to triangle
          if (dom && n < K) {
            Enclosure acc{Rational(0)};
            for (long k = n + 1; k <= K; ++k) acc = acc + abs(term(k));
            return acc + base_tail_abs(K);
          }
          Enclosure up{Rational(0)};
          for (std::size_t i = 0; i < d.betas.size(); ++i)
            up = up + abs(d.betas[i]) * sandwich(i, n);
          return Enclosure(Rational(0), up.hi);
        } else if constexpr (std::is_same_v<T, BlockMixtureData>) {
          long L = static_cast<long>(d.digits.size());
          long j0 = n / L, r = n % L;
          GeomPoly g = block_poly(d);
          Rational suffix(0), total(0);
          for (long p = 0; p < L; ++p) {
            total += abs(d.digits[p]);
            if (p >= r) suffix += abs(d.digits[p]);
          }
          Enclosure gj0 = abs(g.value(j0));
          return suffix * gj0 + total * g.tail_abs(j0);
        } else if constexpr (std::is_same_v<T, SpaceabilityData>) {
          Rational s(0);
          for (std::size_t i = 0; i < d.t.size(); ++i) {
            if (d.t[i] == 0) continue;
            long cnt = consumed_count(n, static_cast<long>(i) + 1, d.progressions);
            s += abs(d.t[i]) * Rational(Int(1), Int(1) << cnt);
          }
          return Enclosure(s);
        } else {
          const CombinedData& c = d;
          Enclosure up{Rational(0)};
          Rational lo(0);
          std::vector<Enclosure> tails;
          tails.reserve(c.betas.size());
          for (std::size_t i = 0; i < c.betas.size(); ++i)
            tails.push_back(c.parts[i]->tail_sum_abs(n));
          for (std::size_t i = 0; i < c.betas.size(); ++i)
            up = up + abs(c.betas[i]) * tails[i];
          for (std::size_t p = 0; p < c.betas.size(); ++p) {
            Rational cand = abs(c.betas[p]) * tails[p].lo;
            for (std::size_t i = 0; i < c.betas.size(); ++i)
              if (i != p) cand -= abs(c.betas[i]) * tails[i].hi;
            if (cand > lo) lo = cand;
          }
          return Enclosure(lo, up.hi);
        }
      },
      kind_);
}

Enclosure SummableSequence::base_tail_signed(long n) const {
  return std::visit(
      [&](const auto& d) -> Enclosure {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ExplicitFiniteData>) {
          Rational s(0);
          for (long i = n + 1; i <= static_cast<long>(d.values.size()); ++i)
            s += d.values[i - 1];
          return Enclosure(s);
        } else if constexpr (std::is_same_v<T, ExpMixtureData>) {
          Enclosure acc{Rational(0)};
          for (std::size_t i = 0; i < d.betas.size(); ++i) {
            Enclosure rn1 = pow(d.ratios[i], static_cast<unsigned long>(n + 1));
            Enclosure om(Rational(1) - d.ratios[i].hi, Rational(1) - d.ratios[i].lo);
            acc = acc + d.betas[i] * (rn1 / om);
          }
          return acc;
        } else if constexpr (std::is_same_v<T, PowMixtureData>) {
          Enclosure acc{Rational(0)};
          for (std::size_t i = 0; i < d.betas.size(); ++i) {
            const Rational& p = d.exponents[i];
            Enclosure a = npow(n + 1, Rational(1) - p);
            Enclosure b = npow(n, Rational(1) - p);
            Rational inv = Rational(1) / (p - 1);
            acc = acc + d.betas[i] * Enclosure(inv * a.lo, inv * b.hi);
          }
          return acc;
        } else if constexpr (std::is_same_v<T, BlockMixtureData>) {
          long L = static_cast<long>(d.digits.size());
          long j0 = n / L, r = n % L;
          GeomPoly g = block_poly(d);
          Rational suffix(0), total(0);
          for (long p = 0; p < L; ++p) {
            total += d.digits[p];
            if (p >= r) suffix += d.digits[p];
          }
          return suffix * g.value(j0) + total * g.tail_signed(j0);
        } else if constexpr (std::is_same_v<T, SpaceabilityData>) {
          Rational s(0);
          for (std::size_t i = 0; i < d.t.size(); ++i) {
            if (d.t[i] == 0) continue;
            long cnt = consumed_count(n, static_cast<long>(i) + 1, d.progressions);
            s += d.t[i] * Rational(Int(1), Int(1) << cnt);
          }
          return Enclosure(s);
        } else {
          const CombinedData& c = d;
          Enclosure acc{Rational(0)};
          for (std::size_t i = 0; i < c.betas.size(); ++i)
            acc = acc + c.betas[i] * c.parts[i]->tail_signed(n);
          return acc;
        }
      },
      kind_);
}

Enclosure SummableSequence::tail_sum_abs(long n) const {
  if (n < 0) throw std::invalid_argument("tail_sum_abs: n must be >= 0");
  long M = overrides_.empty() ? 0 : overrides_.rbegin()->first;
  if (n >= M) return base_tail_abs(n);
  Enclosure acc{Rational(0)};
  for (long i = n + 1; i <= M; ++i) acc = acc + abs(term(i));
  return acc + base_tail_abs(M);
}

Enclosure SummableSequence::tail_signed(long n) const {
  if (n < 0) throw std::invalid_argument("tail_signed: n must be >= 0");
  if (absolute_) return tail_sum_abs(n);
  long M = overrides_.empty() ? 0 : overrides_.rbegin()->first;
  if (n >= M) return base_tail_signed(n);
  Enclosure acc{Rational(0)};
  for (long i = n + 1; i <= M; ++i) acc = acc + term(i);
  return acc + base_tail_signed(M);
}

bool SummableSequence::is_c00() const {
  if (std::holds_alternative<ExplicitFiniteData>(kind_)) return true;
  // structured kinds with empty/zero content never validate to zero except
  // via reductions, which produce ExplicitFiniteData
  return false;
}

SummableSequence SummableSequence::with_override(long n, const Rational& v) const {
  if (n < 1) throw std::invalid_argument("with_override: n must be >= 1");
  SummableSequence s = *this;
  s.overrides_[n] = v;
  return s;
}

SummableSequence SummableSequence::as_absolute() const {
  SummableSequence s = *this;
  s.absolute_ = true;
  return s;
}

GeomPoly block_poly(const BlockMixtureData& d) {
  std::vector<Enclosure> rho;
  rho.reserve(d.qs.size());
  for (const auto& q : d.qs) rho.emplace_back(q);
  auto p = GeomPoly::make(d.betas, rho);
  if (!p) throw std::logic_error("block_poly: qs not distinct");
  return *p;
}

namespace {

// extend a known-valid "for all n >= from" index downward by direct checks
template <typename Check>
long extend_down(long from, Check&& ok) {
  while (from > 1 && ok(from - 1)) --from;
  return from;
}

}  // namespace

SignProfile SummableSequence::sign_profile() const {
  SignProfile prof;
  long M = overrides_.empty() ? 0 : overrides_.rbegin()->first;

  std::optional<long> base_nonneg;
  std::optional<long> base_monotone;

  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ExplicitFiniteData>) {
          long nfrom = static_cast<long>(d.values.size()) + 1;
          long mfrom = nfrom;
          base_nonneg = nfrom;
          base_monotone = mfrom;
        } else if constexpr (std::is_same_v<T, ExpMixtureData>) {
          auto p = GeomPoly::make(d.betas, d.ratios);
          if (!p) return;
          auto es = p->eventual_sign();
          if (!es) return;
          if (es->sign >= 0) base_nonneg = es->from;
          if (es->sign == 0) {
            base_monotone = 1;
            return;
          }
          // |x(n)| - |x(n+1)| = sign * sum c_i (1 - rho_i) rho_i^n for n >= from
          std::vector<Rational> dc;
          std::vector<Enclosure> dr;
          for (std::size_t i = 0; i < p->coeffs().size(); ++i) {
            Enclosure om(Rational(1) - p->ratios()[i].hi, Rational(1) - p->ratios()[i].lo);
            // keep rational coefficient path: only exact ratios offer exact 1-rho
            if (!p->ratios()[i].is_point()) {
              dc.clear();
              break;
            }
            dc.push_back(Rational(es->sign) * p->coeffs()[i] * (Rational(1) - p->ratios()[i].lo));
            dr.push_back(p->ratios()[i]);
          }
          if (dc.empty()) return;
          auto dp = GeomPoly::make(dc, dr);
          if (!dp) return;
          auto m0 = dp->nonneg_from(kIndexCap, false);
          if (m0) base_monotone = std::max(es->from, *m0);
        } else if constexpr (std::is_same_v<T, PowMixtureData>) {
          auto dom = pow_sign_stable(d);
          if (!dom) return;
          if (dom->sign >= 0) base_nonneg = dom->from;
          // |x(n)| >= |x(n+1)| from where |b1| p1 (n+1)^(-p1-1) dominates
          // sum_j |bj| pj n^(-pj-1); per-component ratio strictly decreasing
          std::size_t lead = 0;
          for (std::size_t i = 1; i < d.exponents.size(); ++i)
            if (d.exponents[i] < d.exponents[lead]) lead = i;
          if (d.betas.size() == 1) {
            base_monotone = 1;
            return;
          }
          long m1 = static_cast<long>(d.betas.size()) - 1;
          for (long n = std::max<long>(1, dom->from); n <= kIndexCap;
               n = (n < 16 ? n + 1 : n * 2)) {
            bool ok = true;
            for (std::size_t j = 0; j < d.betas.size() && ok; ++j) {
              if (j == lead) continue;
              Enclosure lhs = (Rational(m1) * abs(d.betas[j]) * d.exponents[j]) *
                              npow(n, -d.exponents[j] - 1);
              Enclosure rhs = (abs(d.betas[lead]) * d.exponents[lead]) *
                              npow(n + 1, -d.exponents[lead] - 1);
              if (!certainly_less(lhs, rhs)) ok = false;
            }
            if (ok) {
              base_monotone = std::max(n, dom->from);
              break;
            }
          }
        } else if constexpr (std::is_same_v<T, BlockMixtureData>) {
          GeomPoly g = block_poly(d);
          auto es = g.eventual_sign();
          if (!es) return;
          long L = static_cast<long>(d.digits.size());
          if (es->sign == 0) {
            base_nonneg = 1;
            base_monotone = 1;
            return;
          }
          bool all_same = true;
          for (const auto& dig : d.digits)
            if (sign_of(dig) != 0 && sign_of(dig) * es->sign < 0) all_same = false;
          if (all_same) base_nonneg = (es->from) * L + 1;
          // within-block |digits| must be nonincreasing
          for (long p = 0; p + 1 < L; ++p)
            if (abs(d.digits[p]) < abs(d.digits[p + 1])) return;
          // across blocks: |d_last| |g(j)| >= |d_first| |g(j+1)|
          std::vector<Rational> ec;
          std::vector<Enclosure> er;
          for (std::size_t i = 0; i < d.betas.size(); ++i) {
            ec.push_back(Rational(es->sign) * d.betas[i] *
                         (abs(d.digits[L - 1]) - abs(d.digits[0]) * d.qs[i]));
            er.emplace_back(d.qs[i]);
          }
          auto ep = GeomPoly::make(ec, er);
          if (!ep) return;
          auto j0 = ep->nonneg_from(kIndexCap, false);
          if (j0) base_monotone = std::max(es->from, *j0) * L + 1;
        } else if constexpr (std::is_same_v<T, SpaceabilityData>) {
          bool nonneg = true;
          for (const auto& v : d.t) nonneg = nonneg && v >= 0;
          if (nonneg) base_nonneg = 1;
          // per-cycle pattern |t_1|,...,|t_m| scaled by 2^-j: need the cycle
          // nonincreasing with no interior zeros, and across cycles
          // |t_m| >= |t_1|/2; only the full-support case is certified
          bool mono = static_cast<long>(d.t.size()) == d.progressions;
          for (std::size_t i = 0; mono && i + 1 < d.t.size(); ++i)
            mono = abs(d.t[i]) >= abs(d.t[i + 1]);
          for (std::size_t i = 0; mono && i < d.t.size(); ++i) mono = d.t[i] != 0;
          if (mono && 2 * abs(d.t.back()) >= abs(d.t.front())) base_monotone = 1;
        } else {
          // Combined: no certified profile
        }
      },
      kind_);

  if (absolute_) base_nonneg = base_nonneg ? std::min(*base_nonneg, M + 1) : 1;

  if (base_nonneg) {
    long from = std::max(*base_nonneg, M + 1);
    prof.nonneg_from = extend_down(from, [&](long n) { return term(n).certainly_nonneg(); });
  }
  if (base_monotone) {
    long from = std::max(*base_monotone, M + 1);
    prof.monotone_from = extend_down(
        from, [&](long n) { return certainly_leq(abs(term(n + 1)), abs(term(n))); });
  }
  return prof;
}

namespace {

SummableSequence zero_sequence() { return SummableSequence(ExplicitFiniteData{{}}); }

template <typename T>
const T* as(const SummableSequence& s) {
  if (!s.overrides().empty() || s.is_absolute()) return nullptr;
  return std::get_if<T>(&s.kind());
}

}  // namespace

SummableSequence linear_combination(const std::vector<SummableSequence>& seqs,
                                    const std::vector<Rational>& betas) {
  if (seqs.empty() || seqs.size() != betas.size())
    throw std::invalid_argument("linear_combination: length mismatch or empty input");

  // drop zero coefficients
  std::vector<const SummableSequence*> ss;
  std::vector<Rational> bs;
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    if (betas[i] != 0) {
      ss.push_back(&seqs[i]);
      bs.push_back(betas[i]);
    }
  }
  if (ss.empty()) return zero_sequence();

  auto all_kind = [&](auto tag) {
    using T = decltype(tag);
    for (const auto* s : ss)
      if (!as<T>(*s)) return false;
    return true;
  };

  if (all_kind(ExplicitFiniteData{})) {
    std::size_t len = 0;
    for (const auto* s : ss) len = std::max(len, as<ExplicitFiniteData>(*s)->values.size());
    std::vector<Rational> vals(len, Rational(0));
    for (std::size_t i = 0; i < ss.size(); ++i) {
      const auto& v = as<ExplicitFiniteData>(*ss[i])->values;
      for (std::size_t k = 0; k < v.size(); ++k) vals[k] += bs[i] * v[k];
    }
    while (!vals.empty() && vals.back() == 0) vals.pop_back();
    return SummableSequence(ExplicitFiniteData{std::move(vals)});
  }

  if (all_kind(ExpMixtureData{})) {
    std::vector<Rational> cs;
    std::vector<Enclosure> rs;
    for (std::size_t i = 0; i < ss.size(); ++i) {
      const auto* d = as<ExpMixtureData>(*ss[i]);
      for (std::size_t k = 0; k < d->betas.size(); ++k) {
        Rational c = bs[i] * d->betas[k];
        bool merged = false;
        for (std::size_t j = 0; j < rs.size(); ++j) {
          if (rs[j].is_point() && d->ratios[k].is_point() && rs[j].lo == d->ratios[k].lo) {
            cs[j] += c;
            merged = true;
            break;
          }
        }
        if (!merged) {
          cs.push_back(c);
          rs.push_back(d->ratios[k]);
        }
      }
    }
    for (std::size_t i = cs.size(); i-- > 0;) {
      if (cs[i] == 0) {
        cs.erase(cs.begin() + i);
        rs.erase(rs.begin() + i);
      }
    }
    if (cs.empty()) return zero_sequence();
    return SummableSequence(ExpMixtureData{std::move(cs), std::move(rs)});
  }

  if (all_kind(PowMixtureData{})) {
    std::vector<Rational> cs, ps;
    for (std::size_t i = 0; i < ss.size(); ++i) {
      const auto* d = as<PowMixtureData>(*ss[i]);
      for (std::size_t k = 0; k < d->betas.size(); ++k) {
        Rational c = bs[i] * d->betas[k];
        bool merged = false;
        for (std::size_t j = 0; j < ps.size(); ++j) {
          if (ps[j] == d->exponents[k]) {
            cs[j] += c;
            merged = true;
            break;
          }
        }
        if (!merged) {
          cs.push_back(c);
          ps.push_back(d->exponents[k]);
        }
      }
    }
    for (std::size_t i = cs.size(); i-- > 0;) {
      if (cs[i] == 0) {
        cs.erase(cs.begin() + i);
        ps.erase(ps.begin() + i);
      }
    }
    if (cs.empty()) return zero_sequence();
    return SummableSequence(PowMixtureData{std::move(cs), std::move(ps)});
  }

  if (all_kind(BlockMixtureData{})) {
    const auto* first = as<BlockMixtureData>(*ss[0]);
    bool same_digits = true;
    for (const auto* s : ss)
      same_digits = same_digits && as<BlockMixtureData>(*s)->digits == first->digits;
    if (same_digits) {
      std::vector<Rational> cs, qs;
      for (std::size_t i = 0; i < ss.size(); ++i) {
        const auto* d = as<BlockMixtureData>(*ss[i]);
        for (std::size_t k = 0; k < d->betas.size(); ++k) {
          Rational c = bs[i] * d->betas[k];
          bool merged = false;
          for (std::size_t j = 0; j < qs.size(); ++j) {
            if (qs[j] == d->qs[k]) {
              cs[j] += c;
              merged = true;
              break;
            }
          }
          if (!merged) {
            cs.push_back(c);
            qs.push_back(d->qs[k]);
          }
        }
      }
      for (std::size_t i = cs.size(); i-- > 0;) {
        if (cs[i] == 0) {
          cs.erase(cs.begin() + i);
          qs.erase(qs.begin() + i);
        }
      }
      if (cs.empty()) return zero_sequence();
      // keep qs descending
      std::vector<std::size_t> idx(cs.size());
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(), [&](auto x, auto y) { return qs[x] > qs[y]; });
      std::vector<Rational> cs2, qs2;
      for (auto i : idx) {
        cs2.push_back(cs[i]);
        qs2.push_back(qs[i]);
      }
      return SummableSequence(BlockMixtureData{first->digits, std::move(cs2), std::move(qs2)});
    }
  }

  if (all_kind(SpaceabilityData{})) {
    const auto* first = as<SpaceabilityData>(*ss[0]);
    bool same_m = true;
    for (const auto* s : ss)
      same_m = same_m && as<SpaceabilityData>(*s)->progressions == first->progressions;
    if (same_m) {
      std::size_t len = 0;
      for (const auto* s : ss) len = std::max(len, as<SpaceabilityData>(*s)->t.size());
      std::vector<Rational> t(len, Rational(0));
      for (std::size_t i = 0; i < ss.size(); ++i) {
        const auto& ti = as<SpaceabilityData>(*ss[i])->t;
        for (std::size_t k = 0; k < ti.size(); ++k) t[k] += bs[i] * ti[k];
      }
      bool any = false;
      for (const auto& v : t) any = any || v != 0;
      if (!any) return zero_sequence();
      return SummableSequence(SpaceabilityData{std::move(t), first->progressions});
    }
  }

  if (ss.size() == 1 && bs[0] == 1) return *ss[0];

  CombinedData c;
  for (std::size_t i = 0; i < ss.size(); ++i) {
    c.betas.push_back(bs[i]);
    c.parts.push_back(std::make_shared<SummableSequence>(*ss[i]));
  }
  return SummableSequence(std::move(c));
}

namespace {

using ExpTerms = std::vector<std::pair<Rational, Enclosure>>;

ExpTerms exp_mul(const ExpTerms& a, const ExpTerms& b) {
  ExpTerms out;
  for (const auto& [ca, ra] : a) {
    for (const auto& [cb, rb] : b) {
      Rational c = ca * cb;
      Enclosure r = ra * rb;
      bool merged = false;
      for (auto& [co, ro] : out) {
        if (ro.is_point() && r.is_point() && ro.lo == r.lo) {
          co += c;
          merged = true;
          break;
        }
      }
      if (!merged) out.emplace_back(c, r);
    }
  }
  if (out.size() > 4096) throw std::invalid_argument("power_product: expansion too large");
  return out;
}

ExpTerms exp_pow(ExpTerms base, unsigned long k) {
  bool first = true;
  ExpTerms result;
  while (k) {
    if (k & 1) {
      result = first ? base : exp_mul(result, base);
      first = false;
    }
    k >>= 1;
    if (k) base = exp_mul(base, base);
  }
  return result;
}

}  // namespace

SummableSequence power_product(const std::vector<SummableSequence>& seqs,
                               const std::vector<unsigned long>& exponents) {
  if (seqs.empty() || seqs.size() != exponents.size())
    throw std::invalid_argument("power_product: empty input or length mismatch");
  for (auto k : exponents)
    if (k == 0) throw std::invalid_argument("power_product: exponents must be positive");

  bool all_exp = true, all_pow = true;
  for (const auto& s : seqs) {
    all_exp = all_exp && as<ExpMixtureData>(s) != nullptr;
    all_pow = all_pow && as<PowMixtureData>(s) != nullptr;
  }
  if (all_exp) {
    ExpTerms acc;
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      const auto* d = as<ExpMixtureData>(seqs[i]);
      ExpTerms t;
      for (std::size_t k = 0; k < d->betas.size(); ++k)
        t.emplace_back(d->betas[k], d->ratios[k]);
      ExpTerms p = exp_pow(t, exponents[i]);
      acc = (i == 0) ? p : exp_mul(acc, p);
    }
    std::vector<Rational> cs;
    std::vector<Enclosure> rs;
    for (auto& [c, r] : acc) {
      if (c == 0) continue;
      cs.push_back(c);
      rs.push_back(r);
    }
    if (cs.empty()) return SummableSequence(ExplicitFiniteData{{}});
    // derived ratios must be certified pairwise distinct
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = i + 1; j < rs.size(); ++j)
        if (!disjoint(rs[i], rs[j]))
          throw std::invalid_argument("power_product: derived ratios not certified distinct");
    return SummableSequence(ExpMixtureData{std::move(cs), std::move(rs)});
  }
  if (all_pow) {
    std::vector<std::pair<Rational, Rational>> acc;  // (coeff, exponent)
    auto mul = [](const std::vector<std::pair<Rational, Rational>>& a,
                  const std::vector<std::pair<Rational, Rational>>& b) {
      std::vector<std::pair<Rational, Rational>> out;
      for (const auto& [ca, pa] : a)
        for (const auto& [cb, pb] : b) {
          Rational c = ca * cb, p = pa + pb;
          bool merged = false;
          for (auto& [co, po] : out)
            if (po == p) {
              co += c;
              merged = true;
              break;
            }
          if (!merged) out.emplace_back(c, p);
        }
      if (out.size() > 4096) throw std::invalid_argument("power_product: expansion too large");
      return out;
    };
    bool first = true;
    for (std::size_t i = 0; i < seqs.size(); ++i) {
      const auto* d = as<PowMixtureData>(seqs[i]);
      std::vector<std::pair<Rational, Rational>> t;
      for (std::size_t k = 0; k < d->betas.size(); ++k)
        t.emplace_back(d->betas[k], d->exponents[k]);
      std::vector<std::pair<Rational, Rational>> p;
      bool pfirst = true;
      auto base = t;
      unsigned long e = exponents[i];
      while (e) {
        if (e & 1) {
          p = pfirst ? base : mul(p, base);
          pfirst = false;
        }
        e >>= 1;
        if (e) base = mul(base, base);
      }
      acc = first ? p : mul(acc, p);
      first = false;
    }
    std::vector<Rational> cs, ps;
    for (auto& [c, p] : acc) {
      if (c == 0) continue;
      cs.push_back(c);
      ps.push_back(p);
    }
    if (cs.empty()) return SummableSequence(ExplicitFiniteData{{}});
    return SummableSequence(PowMixtureData{std::move(cs), std::move(ps)});
  }
  throw std::invalid_argument("power_product: inputs must be all ExpMixture or all PowMixture");
}

SummableSequence scale_sequence(const SummableSequence& s, const Rational& c) {
  if (s.overrides().empty() && !s.is_absolute()) return linear_combination({s}, {c});
  // scale wrapped sequences by scaling the base and transporting wrappers
  SummableSequence base(s.kind());
  SummableSequence scaled = linear_combination({base}, {c});
  for (const auto& [n, v] : s.overrides()) scaled = scaled.with_override(n, c * v);
  if (s.is_absolute()) {
    // c * |x| : fold the sign into an absolute wrapper only for c >= 0
    if (c >= 0) return scaled.as_absolute();
    throw std::invalid_argument("scale_sequence: negative scale of |x| unsupported");
  }
  return scaled;
}

}  // namespace achieveset
