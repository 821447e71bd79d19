#include <achieveset/subsum.hpp>

#include <algorithm>
#include <stdexcept>

namespace achieveset {

namespace {

// subset sums over a common denominator: sorted deduplicated integer sums
struct ScaledPrefix {
  Int denom = 1;
  std::vector<Int> scaled;  // scaled exact terms
};

ScaledPrefix scale_prefix(const std::vector<Rational>& terms) {
  ScaledPrefix p;
  for (const auto& t : terms) p.denom = boost::multiprecision::lcm(p.denom, den(t));
  p.scaled.reserve(terms.size());
  for (const auto& t : terms) p.scaled.push_back(num(t) * (p.denom / den(t)));
  return p;
}

// S' = dedup(merge(S, S + a)); both inputs sorted, a may be negative
std::vector<Int> extend_sums(const std::vector<Int>& s, const Int& a) {
  if (a == 0) return s;
  std::vector<Int> out;
  out.reserve(s.size() * 2);
  auto push = [&out](const Int& v) {
    if (out.empty() || out.back() != v) out.push_back(v);
  };
  std::size_t i = 0, j = 0;
  Int shifted = s.empty() ? Int(0) : s[0] + a;
  while (i < s.size() && j < s.size()) {
    if (s[i] <= shifted) {
      push(s[i]);
      ++i;
    } else {
      push(shifted);
      if (++j < s.size()) shifted = s[j] + a;
    }
  }
  for (; i < s.size(); ++i) push(s[i]);
  for (; j < s.size(); ++j) push(s[j] + a);
  return out;
}

std::vector<Rational> to_rationals(const std::vector<Int>& sums, const Int& denom) {
  std::vector<Rational> out;
  out.reserve(sums.size());
  for (const auto& s : sums) out.emplace_back(s, denom);
  return out;
}

}  // namespace

std::vector<Rational> enumerate_bruteforce(const SummableSequence& seq, long n) {
  if (n < 0) throw std::invalid_argument("enumerate_bruteforce: negative depth");
  if (n > 24) throw std::invalid_argument("enumerate_bruteforce: depth over budget (max 24)");
  std::vector<Rational> terms;
  terms.reserve(n);
  for (long i = 1; i <= n; ++i) {
    auto t = seq.exact_term(i);
    if (!t)
      throw std::invalid_argument("enumerate_bruteforce: non-rational term at index " +
                                  std::to_string(i));
    terms.push_back(*t);
  }
  ScaledPrefix p = scale_prefix(terms);
  std::vector<Int> sums{Int(0)};
  for (const auto& a : p.scaled) sums = extend_sums(sums, a);
  return to_rationals(sums, p.denom);
}

SubsumApproximation approximate(const SummableSequence& seq, long depth,
                                std::size_t max_points) {
  if (depth < 0) throw std::invalid_argument("approximate: negative depth");
  SubsumApproximation ap;
  ap.depth = depth;

  std::vector<Rational> exact_terms;
  std::vector<Enclosure> unresolved;
  for (long i = 1; i <= depth; ++i) {
    Enclosure t = seq.term(i);
    if (t.is_point())
      exact_terms.push_back(t.lo);
    else
      unresolved.push_back(t);
  }

  ScaledPrefix p = scale_prefix(exact_terms);
  std::vector<Int> sums{Int(0)};
  std::size_t consumed = 0;
  for (const auto& a : p.scaled) {
    std::vector<Int> next = extend_sums(sums, a);
    if (next.size() > max_points) {
      ap.budget_exhausted = true;
      break;
    }
    sums = std::move(next);
    ++consumed;
  }
  if (ap.budget_exhausted) {
    // unenumerated exact prefix terms are folded into the unresolved mass
    for (std::size_t i = consumed; i < exact_terms.size(); ++i)
      unresolved.emplace_back(exact_terms[i]);
  }
  ap.exact = unresolved.empty();

  ap.inner = IntervalUnion::points(to_rationals(sums, p.denom));

  Enclosure tail_abs = seq.tail_sum_abs(depth);
  Enclosure tail_sig = seq.tail_signed(depth);
  // sum x+ = (sum|x| + sum x)/2, sum x- = (sum|x| - sum x)/2
  ap.tail_plus = rmax(Rational(0), (tail_abs.hi + tail_sig.hi) / 2);
  ap.tail_minus = rmax(Rational(0), (tail_abs.hi - tail_sig.lo) / 2);
  ap.error_bound = tail_abs.hi;
  for (const auto& e : unresolved) {
    ap.tail_plus += rmax(Rational(0), e.hi);
    ap.tail_minus += rmax(Rational(0), -e.lo);
    ap.error_bound += rmax(abs(e.lo), abs(e.hi));
  }
  ap.outer = fatten(ap.inner, -ap.tail_minus, ap.tail_plus);
  return ap;
}

SubsumApproximation refine(const SummableSequence& seq, const Rational& target_eps,
                           std::size_t max_points) {
  if (target_eps <= 0) throw std::invalid_argument("refine: target_eps must be positive");
  long depth = 0;
  constexpr long kDepthCap = 100000;
  while (depth <= kDepthCap) {
    if (seq.tail_sum_abs(depth).hi <= target_eps) break;
    ++depth;
  }
  if (depth > kDepthCap) throw std::runtime_error("refine: tail does not reach target");
  return approximate(seq, depth, max_points);
}

OracleReport oracle_compare(const SummableSequence& seq, long n) {
  if (n > 20) throw std::invalid_argument("oracle_compare: depth over budget (max 20)");
  OracleReport rep;
  rep.depth = n;
  std::vector<Rational> brute = enumerate_bruteforce(seq, n);
  SubsumApproximation ap = approximate(seq, n);
  IntervalUnion expected = IntervalUnion::points(brute);
  rep.pass = (ap.inner == expected);
  if (!rep.pass) {
    const auto& got = ap.inner.intervals();
    const auto& want = expected.intervals();
    for (std::size_t i = 0; i < std::max(got.size(), want.size()); ++i) {
      if (i >= got.size() || i >= want.size() || !(got[i] == want[i])) {
        rep.first_discrepancy = (i < want.size()) ? want[i].a : got[i].a;
        break;
      }
    }
  }
  return rep;
}

}  // namespace achieveset
