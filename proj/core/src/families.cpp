#include <achieveset/families.hpp>

#include <algorithm>
#include <random>
#include <stdexcept>

namespace achieveset {

SummableSequence geometric(const Rational& q) {
  if (!(q > 0 && q < 1)) throw std::invalid_argument("geometric: q outside (0,1)");
  return SummableSequence(ExpMixtureData{{Rational(1)}, {Enclosure(q)}});
}

SummableSequence guthrie_nymann() {
  return SummableSequence(
      BlockMixtureData{{Rational(3, 4), Rational(1, 2)}, {Rational(1)}, {Rational(1, 4)}});
}

SummableSequence jones_x(const Rational& q) {
  if (!(q > 0 && q < 1)) throw std::invalid_argument("jones_x: q outside (0,1)");
  return SummableSequence(
      BlockMixtureData{{Rational(4), Rational(3), Rational(2)}, {Rational(1)}, {q}});
}

SummableSequence jones_y(const Rational& q) {
  if (!(q > 0 && q < 1)) throw std::invalid_argument("jones_y: q outside (0,1)");
  return SummableSequence(BlockMixtureData{
      {Rational(1), Rational(1), Rational(1), Rational(1), Rational(1)}, {Rational(1)}, {q}});
}

SummableSequence exp_mixture(const std::vector<Rational>& betas,
                             const std::vector<Enclosure>& ratios) {
  if (betas.empty()) throw std::invalid_argument("exp_mixture: empty input");
  // the proofs require pairwise distinct ratios; refuse rather than certify
  for (std::size_t i = 0; i < ratios.size(); ++i)
    for (std::size_t j = i + 1; j < ratios.size(); ++j) {
      bool same_exact =
          ratios[i].is_point() && ratios[j].is_point() && ratios[i].lo == ratios[j].lo;
      if (same_exact || (!disjoint(ratios[i], ratios[j])))
        throw std::invalid_argument("exp_mixture: ratios not certified distinct");
    }
  return SummableSequence(ExpMixtureData{betas, ratios});
}

SummableSequence pow_mixture(const std::vector<Rational>& betas,
                             const std::vector<Rational>& exponents) {
  if (betas.empty()) throw std::invalid_argument("pow_mixture: empty input");
  return SummableSequence(PowMixtureData{betas, exponents});
}

namespace {
SummableSequence block_combination(const std::vector<Rational>& digits,
                                   const std::vector<Rational>& betas,
                                   const std::vector<Rational>& qs) {
  if (betas.empty() || betas.size() != qs.size())
    throw std::invalid_argument("combination: length mismatch or empty");
  std::vector<SummableSequence> parts;
  parts.reserve(qs.size());
  for (const auto& q : qs)
    parts.emplace_back(BlockMixtureData{digits, {Rational(1)}, {q}});
  return linear_combination(parts, betas);
}
}  // namespace

SummableSequence jones_x_combination(const std::vector<Rational>& betas,
                                     const std::vector<Rational>& qs) {
  return block_combination({Rational(4), Rational(3), Rational(2)}, betas, qs);
}

SummableSequence jones_y_combination(const std::vector<Rational>& betas,
                                     const std::vector<Rational>& qs) {
  return block_combination(
      {Rational(1), Rational(1), Rational(1), Rational(1), Rational(1)}, betas, qs);
}

SummableSequence spaceability_sequence(long progressions, long k) {
  if (k < 1 || k > progressions)
    throw std::invalid_argument("spaceability_sequence: index outside partition");
  std::vector<Rational> t(static_cast<std::size_t>(k), Rational(0));
  t[k - 1] = Rational(1);
  return SummableSequence(SpaceabilityData{std::move(t), progressions});
}

SpaceabilityCombination spaceability_combine(const std::vector<Rational>& t,
                                             std::optional<long> progressions) {
  long m = progressions.value_or(static_cast<long>(t.size()));
  SummableSequence seq{SpaceabilityData{t, m}};
  Rational lo(0), hi(0);
  for (const auto& v : t) {
    if (v < 0) lo += v;
    if (v > 0) hi += v;
  }
  return SpaceabilityCombination{std::move(seq), ClosedInterval{lo, hi}};
}

GlidingHump gliding_hump(const std::vector<std::vector<Rational>>& blocks,
                         const std::vector<Rational>& epsilons,
                         const std::vector<long>& offsets, const Rational& tolerance) {
  if (blocks.empty() || blocks.size() != epsilons.size())
    throw std::invalid_argument("gliding_hump: blocks/epsilons mismatch or empty");
  for (std::size_t k = 0; k + 1 < epsilons.size(); ++k)
    if (!(epsilons[k] > epsilons[k + 1]))
      throw std::invalid_argument("gliding_hump: epsilons must be strictly decreasing");
  if (epsilons.back() <= 0) throw std::invalid_argument("gliding_hump: epsilons must be positive");

  // supports: default consecutive; explicit offsets must be disjoint
  std::vector<long> starts;
  if (offsets.empty()) {
    long pos = 1;
    for (const auto& b : blocks) {
      starts.push_back(pos);
      pos += static_cast<long>(b.size());
    }
  } else {
    if (offsets.size() != blocks.size())
      throw std::invalid_argument("gliding_hump: offsets length mismatch");
    starts = offsets;
    for (std::size_t i = 0; i < blocks.size(); ++i)
      for (std::size_t j = i + 1; j < blocks.size(); ++j) {
        long ai = starts[i], bi = ai + static_cast<long>(blocks[i].size()) - 1;
        long aj = starts[j], bj = aj + static_cast<long>(blocks[j].size()) - 1;
        if (ai <= bj && aj <= bi)
          throw std::invalid_argument("gliding_hump: overlapping block supports");
      }
  }

  for (std::size_t k = 0; k < blocks.size(); ++k) {
    Rational norm(0);
    for (const auto& v : blocks[k]) norm += abs(v);
    Rational want = Rational(1) + epsilons[k];
    if (abs(Rational(norm - want)) > tolerance)
      throw std::invalid_argument("gliding_hump: block " + std::to_string(k + 1) +
                                  " l1-norm differs from 1+eps beyond tolerance");
  }

  long total = 0;
  for (std::size_t k = 0; k < blocks.size(); ++k)
    total = std::max(total, starts[k] + static_cast<long>(blocks[k].size()) - 1);
  std::vector<Rational> values(static_cast<std::size_t>(total), Rational(0));
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    Rational scale = Rational(Int(1), Int(1) << k);  // block k+1 scaled by 2^-k
    for (std::size_t i = 0; i < blocks[k].size(); ++i)
      values[starts[k] - 1 + i] = blocks[k][i] * scale;
  }

  Rational lo(0), hi(0);
  for (const auto& v : blocks[0]) {
    if (v < 0) lo += v;
    if (v > 0) hi += v;
  }

  GlidingHump gh{SummableSequence(ExplicitFiniteData{std::move(values)}),
                 ClosedInterval{lo, hi}, Rational(0), {}};
  std::size_t K = blocks.size();
  if (K >= 2) {
    gh.density_bound =
        (Rational(1) + epsilons[K - 1]) / Rational(Int(1) << K) + 2 * epsilons[K - 2];
  } else {
    gh.density_bound = (Rational(1) + epsilons[0]) / 2;
  }
  std::vector<long> ends;
  for (std::size_t k = 0; k < K; ++k)
    ends.push_back(starts[k] + static_cast<long>(blocks[k].size()) - 1);
  std::sort(ends.begin(), ends.end());
  gh.block_ends = std::move(ends);
  return gh;
}

// --- eq (1) / eq (2) ----------------------------------------------------

namespace {

void validate_qs(const std::vector<Rational>& betas, const std::vector<Rational>& qs) {
  if (betas.empty() || betas.size() != qs.size())
    throw std::invalid_argument("eq check: length mismatch or empty");
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (!(qs[i] > 0 && qs[i] < 1)) throw std::invalid_argument("eq check: q outside (0,1)");
    if (i + 1 < qs.size() && !(qs[i] > qs[i + 1]))
      throw std::invalid_argument("eq check: qs must be strictly decreasing");
  }
}

GeomPoly g_poly(const std::vector<Rational>& betas, const std::vector<Rational>& qs) {
  std::vector<Enclosure> rho;
  rho.reserve(qs.size());
  for (const auto& q : qs) rho.emplace_back(q);
  auto p = GeomPoly::make(betas, rho);
  if (!p) throw std::invalid_argument("eq check: qs not distinct");
  return *p;
}

EqCheckReport eq_check_impl(const std::vector<Rational>& betas,
                            const std::vector<Rational>& qs, long n_from, long n_to,
                            const Rational& lhs_factor, const Rational& rhs_factor,
                            bool strict) {
  validate_qs(betas, qs);
  GeomPoly g = g_poly(betas, qs);
  EqCheckReport rep;
  rep.all_rows_hold = true;
  for (long n = n_from; n <= n_to; ++n) {
    EqCheckRow row;
    row.n = n;
    Enclosure gv = abs(g.value(n));
    Enclosure gt = g.tail_abs(n);
    if (!gv.is_point() || !gt.is_point())
      throw std::logic_error("eq check: expected exact values");
    row.lhs = lhs_factor * gv.lo;
    row.rhs = rhs_factor * gt.lo;
    row.holds = strict ? (row.lhs > row.rhs) : (row.lhs <= row.rhs);
    rep.all_rows_hold = rep.all_rows_hold && row.holds;
    rep.rows.push_back(std::move(row));
  }
  // limiting ratio: lhs/rhs -> (lhs_factor/rhs_factor) * (1-q1)/q1 vs 1
  Rational limit = (lhs_factor * (1 - qs[0])) / (rhs_factor * qs[0]);
  rep.limit_holds = strict ? (limit > 1) : (limit <= 1);

  // certified all-n verdict: sign of lhs_factor |g(n)| - rhs_factor tail(n)
  // for all n >= 1, via the sign-stable difference polynomial when available
  auto es = g.eventual_sign();
  if (es && es->sign != 0) {
    std::vector<Rational> dc;
    std::vector<Enclosure> dr;
    for (std::size_t i = 0; i < betas.size(); ++i) {
      dc.push_back(Rational(es->sign) * betas[i] *
                   (lhs_factor - rhs_factor * qs[i] / (1 - qs[i])));
      dr.emplace_back(qs[i]);
    }
    auto dpoly = GeomPoly::make(dc, dr);
    if (dpoly) {
      auto from = strict ? dpoly->nonneg_from(1L << 22, true)
                         : dpoly->scaled(Rational(-1)).nonneg_from(1L << 22, false);
      bool cont_ok = from.has_value();
      if (cont_ok) {
        long start = std::max(es->from, *from);
        bool head_ok = true;
        for (long n = 1; n < start && head_ok; ++n) {
          Enclosure gv = abs(g.value(n));
          Enclosure gt = g.tail_abs(n);
          Rational l = lhs_factor * gv.lo, r = rhs_factor * gt.lo;
          head_ok = strict ? (l > r) : (l <= r);
        }
        rep.holds_for_all_n = head_ok;
      } else {
        // eventually fails (or not certifiable); for exact single-ratio data
        // the difference has constant sign, so report failure when decidable
        auto opp = strict ? dpoly->scaled(Rational(-1)).nonneg_from(1L << 22, false)
                          : dpoly->nonneg_from(1L << 22, true);
        if (opp) rep.holds_for_all_n = false;
      }
    }
  } else if (es && es->sign == 0) {
    // g identically zero cannot happen here (betas nonzero, qs distinct)
    rep.holds_for_all_n = !strict;
  }
  return rep;
}

}  // namespace

EqCheckReport eq1_check(const std::vector<Rational>& betas, const std::vector<Rational>& qs,
                        long n_from, long n_to) {
  return eq_check_impl(betas, qs, n_from, n_to, Rational(2), Rational(9), true);
}

EqCheckReport eq2_check(const std::vector<Rational>& betas, const std::vector<Rational>& qs,
                        long n_from, long n_to) {
  return eq_check_impl(betas, qs, n_from, n_to, Rational(1), Rational(5), false);
}

std::optional<std::vector<int>> decompose_digit(int v) {
  static const int digits[3] = {4, 3, 2};
  for (int mask = 0; mask < 8; ++mask) {
    int sum = 0;
    for (int i = 0; i < 3; ++i)
      if (mask & (1 << i)) sum += digits[i];
    if (sum == v) {
      std::vector<int> idx;
      for (int i = 0; i < 3; ++i)
        if (mask & (1 << i)) idx.push_back(i);
      return idx;
    }
  }
  return std::nullopt;
}

InclusionReport inclusion_check(const std::vector<Rational>& betas,
                                const std::vector<Rational>& qs, long depth) {
  validate_qs(betas, qs);
  {
    auto e1 = eq1_check(betas, qs, 1, 8);
    auto e2 = eq2_check(betas, qs, 1, 8);
    if (!(e1.holds_for_all_n.value_or(false) || e1.limit_holds) ||
        !(e2.holds_for_all_n.value_or(false) || e2.limit_holds))
      throw std::invalid_argument("inclusion_check: eq1/eq2 precondition fails");
  }
  InclusionReport rep;
  rep.depth = depth;

  rep.digit_table_ok = true;
  for (int v = 2; v <= 7; ++v) {
    auto dec = decompose_digit(v);
    if (!dec) {
      rep.digit_table_ok = false;
      break;
    }
    rep.digit_table.emplace_back(v, *dec);
  }
  rep.one_not_representable = !decompose_digit(1).has_value();

  SummableSequence x = jones_x_combination(betas, qs);
  SummableSequence y = jones_y_combination(betas, qs);

  // offset 2*sum_{n>=0} g(n) = 2 * sum_i beta_i / (1 - q_i), exact
  Rational offset(0);
  for (std::size_t i = 0; i < betas.size(); ++i) offset += betas[i] / (1 - qs[i]);
  offset *= 2;

  SubsumApproximation ax = approximate(x, depth);
  SubsumApproximation ay = approximate(y, depth);
  rep.translate_subset_ok = contains(ax.outer, translate(ay.inner, offset));

  // sampled digit re-encodings: for random digit rows (m_0..m_{J-1}) in
  // {0..5}^J, 2*sum_{j<J} g(j) + sum m_j g(j) must be an exact inner point of
  // x at block depth J
  long Jx = depth / 3;
  GeomPoly g = g_poly(betas, qs);
  std::mt19937_64 rng(20240711);
  rep.samples_ok = true;
  SubsumApproximation ax_blocks = approximate(x, 3 * Jx);
  for (int trial = 0; trial < 64 && rep.samples_ok; ++trial) {
    Rational point(0);
    for (long j = 0; j < Jx; ++j) {
      long m = static_cast<long>(rng() % 6);
      Enclosure gv = g.value(j);
      point += Rational(2 + m) * gv.lo;
    }
    rep.samples_ok = contains_point(ax_blocks.inner, point);
  }
  return rep;
}

GlidingHumpReport verify_gliding_hump(const GlidingHump& gh) {
  GlidingHumpReport rep;
  const auto* fin = std::get_if<ExplicitFiniteData>(&gh.seq.kind());
  long full = fin ? static_cast<long>(fin->values.size()) : 0;
  SubsumApproximation full_ap = approximate(gh.seq, full);
  IntervalUnion predicted = IntervalUnion::single(gh.predicted.a, gh.predicted.b);
  rep.density_achieved = directed_hausdorff(predicted, full_ap.inner);
  rep.density_ok = rep.density_achieved <= gh.density_bound;

  rep.outer_containment_ok = true;
  for (std::size_t i = 0; i + 1 < gh.block_ends.size(); ++i) {
    SubsumApproximation ap = approximate(gh.seq, gh.block_ends[i]);
    rep.outer_containment_ok = rep.outer_containment_ok && contains(ap.outer, predicted);
  }
  return rep;
}

}  // namespace achieveset
