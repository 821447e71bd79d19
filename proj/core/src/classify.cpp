#include <achieveset/classify.hpp>
#include <achieveset/subsum.hpp>

#include <algorithm>
#include <stdexcept>

namespace achieveset {

namespace {

constexpr long kContSearchCap = 1L << 22;

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::FiniteUnionOfIntervals: return "FiniteUnionOfIntervals";
    case Verdict::CantorLike: return "CantorLike";
    case Verdict::Cantorval: return "Cantorval";
    default: return "Undetermined";
  }
}

// certified per-n checks through the sequence oracles
bool strict_at(const SummableSequence& s, long n) {
  Enclosure t = abs(s.term(n));
  Enclosure tail = s.tail_sum_abs(n);
  return t.lo > tail.hi;
}
bool leq_at(const SummableSequence& s, long n) {
  Enclosure t = abs(s.term(n));
  Enclosure tail = s.tail_sum_abs(n);
  return t.hi <= tail.lo;
}

struct ContinuationResult {
  Continuation kind;
  long from;  // valid for all n >= from
};

long override_end(const SummableSequence& s) {
  return s.overrides().empty() ? 0 : s.overrides().rbegin()->first;
}

// ---- per-kind continuation finders -----------------------------------
// Each returns the index from which the requested comparison between
// |x(n)| and sum_{i>n}|x(i)| provably holds for the *base* kind.

std::optional<ContinuationResult> exp_continuation(const ExpMixtureData& d, bool strict) {
  auto poly = GeomPoly::make(d.betas, d.ratios);
  if (!poly || poly->is_zero()) return std::nullopt;
  auto es = poly->eventual_sign();
  if (!es || es->sign == 0) return std::nullopt;
  long K = es->from;

  if (poly->all_exact()) {
    // D(n) = |x(n)| - tail(n) = sign * sum_i c_i (1-2rho_i)/(1-rho_i) rho_i^n
    std::vector<Rational> dc;
    std::vector<Enclosure> dr;
    for (std::size_t i = 0; i < poly->coeffs().size(); ++i) {
      Rational rho = poly->ratios()[i].lo;
      dc.push_back(Rational(es->sign) * poly->coeffs()[i] * (1 - 2 * rho) / (1 - rho));
      dr.push_back(poly->ratios()[i]);
    }
    auto dpoly = GeomPoly::make(dc, dr);
    if (!dpoly) return std::nullopt;
    auto inner = strict ? dpoly->nonneg_from(kContSearchCap, true)
                        : dpoly->scaled(Rational(-1)).nonneg_from(kContSearchCap, false);
    if (strict) {
      if (!inner) return std::nullopt;
      return ContinuationResult{Continuation::GeomDominance, std::max(K, *inner)};
    }
    // nonstrict: want D(n) <= 0 for all large n, i.e. (-D) >= 0
    auto neg = dpoly->scaled(Rational(-1)).nonneg_from(kContSearchCap, false);
    if (!neg) return std::nullopt;
    return ContinuationResult{Continuation::GeomDominance, std::max(K, *neg)};
  }

  // enclosure ratios: margin dominance by doubling; both conditions are
  // upward closed in n because every (rho_j / rho_0)^n factor decreases
  const auto& c = poly->coeffs();
  const auto& rho = poly->ratios();
  for (long n = K; n <= kContSearchCap; n = (n < 16 ? n + 1 : n * 2)) {
    Enclosure lead = abs(c[0]) * pow(rho[0], static_cast<unsigned long>(n));
    Enclosure rest{Rational(0)};
    for (std::size_t j = 1; j < c.size(); ++j)
      rest = rest + abs(c[j]) * pow(rho[j], static_cast<unsigned long>(n));
    Enclosure tail_hi{Rational(0)};
    Enclosure tail_lo_lead = abs(c[0]) * (pow(rho[0], static_cast<unsigned long>(n + 1)) /
                                          Enclosure(1 - rho[0].hi, 1 - rho[0].lo));
    for (std::size_t i = 0; i < c.size(); ++i)
      tail_hi = tail_hi + abs(c[i]) * (pow(rho[i], static_cast<unsigned long>(n + 1)) /
                                       Enclosure(1 - rho[i].hi, 1 - rho[i].lo));
    if (strict) {
      // |x(n)| >= lead - rest > tail_hi >= tail(n)
      if ((lead - rest).lo > tail_hi.hi)
        return ContinuationResult{Continuation::GeomDominance, n};
    } else {
      // |x(n)| <= lead + rest <= tail_lo_lead - rest_tail <= tail(n)
      Enclosure rest_tail{Rational(0)};
      for (std::size_t j = 1; j < c.size(); ++j)
        rest_tail = rest_tail + abs(c[j]) * (pow(rho[j], static_cast<unsigned long>(n + 1)) /
                                             Enclosure(1 - rho[j].hi, 1 - rho[j].lo));
      if ((lead + rest).hi <= (tail_lo_lead - rest_tail).lo)
        return ContinuationResult{Continuation::GeomDominance, n};
    }
  }
  return std::nullopt;
}

Enclosure npow_enc(long n, const Rational& e) {
  if (e == 0) return Enclosure(Rational(1));
  if (den(e) == 1) return Enclosure(rpow(Rational(n), num(e).convert_to<long>()));
  return pow_rational(Rational(n), e, precision());
}

std::optional<ContinuationResult> pow_interval_continuation(const PowMixtureData& d) {
  // sum_i |b_i| n^-p_i <= |b_lead| (n+1)^(1-p_lead)/(p_lead-1)
  //                        - sum_{j != lead} |b_j| n^(1-p_j)/(p_j-1)
  // LHS/n^(1-p_lead) decreases, RHS/n^(1-p_lead) increases: upward closed.
  std::size_t lead = 0;
  for (std::size_t i = 1; i < d.exponents.size(); ++i)
    if (d.exponents[i] < d.exponents[lead]) lead = i;
  for (long n = 1; n <= kContSearchCap; n = (n < 16 ? n + 1 : n * 2)) {
    Enclosure lhs{Rational(0)};
    for (std::size_t i = 0; i < d.betas.size(); ++i)
      lhs = lhs + abs(d.betas[i]) * npow_enc(n, -d.exponents[i]);
    Enclosure rhs = (abs(d.betas[lead]) * (Rational(1) / (d.exponents[lead] - 1))) *
                    npow_enc(n + 1, 1 - d.exponents[lead]);
    for (std::size_t j = 0; j < d.betas.size(); ++j) {
      if (j == lead) continue;
      rhs = rhs - (abs(d.betas[j]) * (Rational(1) / (d.exponents[j] - 1))) *
                      npow_enc(n, 1 - d.exponents[j]);
    }
    if (lhs.hi <= rhs.lo) return ContinuationResult{Continuation::PowerIntegral, n};
  }
  return std::nullopt;
}

// Per-position block comparisons: for block j and 0-based position p,
// |x| = |d_p| |g(j)| and tail = suffix_p |g(j)| + S_abs sum_{k>j} |g(k)|.
struct BlockPositionAnalysis {
  // for each position, the block index from which the comparison holds
  std::vector<std::optional<long>> strict_from;
  std::vector<std::optional<long>> leq_from;
  long sign_from = 0;  // block index from which g has constant sign
};

std::optional<BlockPositionAnalysis> analyze_block(const BlockMixtureData& d,
                                                   bool absolute) {
  GeomPoly g = block_poly(d);
  if (g.is_zero()) return std::nullopt;
  auto es = g.eventual_sign();
  if (!es || es->sign == 0) return std::nullopt;
  long L = static_cast<long>(d.digits.size());
  BlockPositionAnalysis out;
  out.sign_from = es->from;
  out.strict_from.resize(L);
  out.leq_from.resize(L);
  Rational s_abs(0);
  for (const auto& dig : d.digits) s_abs += abs(dig);
  for (long p = 0; p < L; ++p) {
    Rational suffix(0);
    for (long pp = p + 1; pp < L; ++pp) suffix += abs(d.digits[pp]);
    // D_p(j) = sign * sum_i beta_i [ (|d_p| - suffix_p) - S_abs q_i/(1-q_i) ] q_i^j
    std::vector<Rational> dc;
    std::vector<Enclosure> dr;
    for (std::size_t i = 0; i < d.betas.size(); ++i) {
      Rational coeff = Rational(es->sign) * d.betas[i] *
                       ((abs(d.digits[p]) - suffix) - s_abs * d.qs[i] / (1 - d.qs[i]));
      dc.push_back(coeff);
      dr.emplace_back(d.qs[i]);
    }
    auto dp = GeomPoly::make(dc, dr);
    if (!dp) return std::nullopt;
    auto st = dp->nonneg_from(kContSearchCap, true);
    if (st) out.strict_from[p] = std::max(*st, es->from);
    auto lq = dp->scaled(Rational(-1)).nonneg_from(kContSearchCap, false);
    if (lq) out.leq_from[p] = std::max(*lq, es->from);
  }
  (void)absolute;  // comparisons only involve absolute values
  return out;
}

// spaceability per-cycle constants: position i (0-based), |t_i| vs
// suffix_i + S where S = sum |t|; block-independent.
struct SpaceabilityAnalysis {
  bool all_leq = true;
  bool all_strict = true;
};
SpaceabilityAnalysis analyze_spaceability(const SpaceabilityData& d) {
  SpaceabilityAnalysis a;
  Rational S(0);
  for (const auto& v : d.t) S += abs(v);
  for (long i = 0; i < d.progressions; ++i) {
    Rational ti = (i < static_cast<long>(d.t.size())) ? abs(d.t[i]) : Rational(0);
    Rational suffix(0);
    for (long j = i + 1; j < static_cast<long>(d.t.size()); ++j) suffix += abs(d.t[j]);
    if (!(ti > suffix + S)) a.all_strict = false;
    if (!(ti <= suffix + S)) a.all_leq = false;
  }
  return a;
}

std::optional<ContinuationResult> base_continuation(const SummableSequence& s, bool strict) {
  return std::visit(
      [&](const auto& d) -> std::optional<ContinuationResult> {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, ExpMixtureData>) {
          return exp_continuation(d, strict);
        } else if constexpr (std::is_same_v<T, PowMixtureData>) {
          if (strict) return std::nullopt;  // term/tail ratio tends to 0
          return pow_interval_continuation(d);
        } else if constexpr (std::is_same_v<T, BlockMixtureData>) {
          auto an = analyze_block(d, s.is_absolute());
          if (!an) return std::nullopt;
          long L = static_cast<long>(d.digits.size());
          long block_from = an->sign_from;
          const auto& table = strict ? an->strict_from : an->leq_from;
          for (const auto& f : table) {
            if (!f) return std::nullopt;
            block_from = std::max(block_from, *f);
          }
          Continuation c = d.betas.size() == 1 ? Continuation::BlockSelfSimilar
                                               : Continuation::GeomDominance;
          return ContinuationResult{c, block_from * L + 1};
        } else if constexpr (std::is_same_v<T, SpaceabilityData>) {
          auto an = analyze_spaceability(d);
          if (strict ? an.all_strict : an.all_leq)
            return ContinuationResult{Continuation::SpaceabilityCycle, 1};
          return std::nullopt;
        } else {
          return std::nullopt;  // ExplicitFinite / Combined: no continuation
        }
      },
      s.kind());
}

template <typename CertT>
std::optional<CertT> kakeya_test(const SummableSequence& s, long horizon, bool strict) {
  auto cont = base_continuation(s, strict);
  if (!cont) return std::nullopt;
  long M = override_end(s);
  long from = std::max(cont->from, M + 1);
  long checked_to = std::max(horizon, from - 1);
  auto ok = [&](long n) { return strict ? strict_at(s, n) : leq_at(s, n); };
  // the comparison must hold on [n0, checked_to] with n0 <= horizon
  long n0 = checked_to + 1;
  for (long n = checked_to; n >= 1; --n) {
    if (ok(n))
      n0 = n;
    else
      break;
  }
  if (n0 > horizon) return std::nullopt;
  CertT cert;
  cert.k.n0 = n0;
  cert.k.checked_to = checked_to;
  cert.k.continuation = cont->kind;
  cert.k.cont_from = from;
  return cert;
}

// arithmetic-run search over block subset sums, longest run first
struct RunCandidate {
  Rational base;
  Rational step;
  long len;
  std::vector<std::vector<int>> decomposition;
};

std::vector<RunCandidate> find_runs(const std::vector<Rational>& digits) {
  // subset sums with one representative decomposition each
  std::vector<std::pair<Rational, std::vector<int>>> sums{{Rational(0), {}}};
  for (std::size_t i = 0; i < digits.size(); ++i) {
    std::size_t n = sums.size();
    for (std::size_t k = 0; k < n; ++k) {
      auto dec = sums[k].second;
      dec.push_back(static_cast<int>(i));
      sums.emplace_back(sums[k].first + digits[i], std::move(dec));
    }
  }
  std::sort(sums.begin(), sums.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  sums.erase(std::unique(sums.begin(), sums.end(),
                         [](const auto& a, const auto& b) { return a.first == b.first; }),
             sums.end());
  std::vector<RunCandidate> runs;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    for (std::size_t j = i + 1; j < sums.size(); ++j) {
      Rational step = sums[j].first - sums[i].first;
      RunCandidate rc{sums[i].first, step, 0, {sums[i].second}};
      Rational next = sums[i].first + step;
      std::size_t pos = i;
      while (true) {
        bool found = false;
        for (std::size_t k = pos + 1; k < sums.size(); ++k) {
          if (sums[k].first == next) {
            rc.decomposition.push_back(sums[k].second);
            rc.len += 1;
            pos = k;
            next += step;
            found = true;
            break;
          }
          if (sums[k].first > next) break;
        }
        if (!found) break;
      }
      if (rc.len >= 1) runs.push_back(std::move(rc));
    }
  }
  std::sort(runs.begin(), runs.end(),
            [](const RunCandidate& a, const RunCandidate& b) { return a.len > b.len; });
  return runs;
}

std::optional<DigitRunWitness> digit_run_witness(const BlockMixtureData& d, bool absolute,
                                                 long min_block) {
  GeomPoly g = block_poly(d);
  auto es = g.eventual_sign();
  if (!es || es->sign == 0) return std::nullopt;
  std::vector<Rational> digs = d.digits;
  if (absolute)
    for (auto& x : digs) x = abs(x);
  auto runs = find_runs(digs);
  for (const auto& rc : runs) {
    if (rc.len < 1 || rc.step <= 0) continue;
    // greedy premise: |g(j)| <= len * sum_{l>j} |g(l)| for all j >= K
    std::vector<Rational> pc;
    std::vector<Enclosure> pr;
    for (std::size_t i = 0; i < d.betas.size(); ++i) {
      pc.push_back(Rational(es->sign) * d.betas[i] *
                   (Rational(rc.len) * d.qs[i] / (1 - d.qs[i]) - 1));
      pr.emplace_back(d.qs[i]);
    }
    auto prem = GeomPoly::make(pc, pr);
    if (!prem) continue;
    auto kfrom = prem->nonneg_from(kContSearchCap, false);
    if (!kfrom) continue;
    long K = std::max({es->from, *kfrom, min_block});
    Enclosure tail = g.tail_abs(K - 1);
    if (!tail.is_point() || tail.lo <= 0) continue;
    Rational T = tail.lo;
    int sigma = absolute ? 1 : es->sign;
    Rational e1 = Rational(sigma) * rc.base * T;
    Rational e2 = Rational(sigma) * (rc.base + rc.step * rc.len) * T;
    if (e1 == e2) continue;
    DigitRunWitness w;
    w.from_block = K;
    w.base = rc.base;
    w.step = rc.step;
    w.len = rc.len;
    w.decomposition = rc.decomposition;
    w.witness = {rmin(e1, e2), rmax(e1, e2)};
    return w;
  }
  return std::nullopt;
}

std::optional<ImportedPatternWitness> imported_pattern_witness(const SummableSequence& s,
                                                               const BlockMixtureData& d,
                                                               long min_block, long depth) {
  if (d.betas.size() != 1 || d.digits.size() != 2) return std::nullopt;
  if (d.qs[0] != Rational(1, 4)) return std::nullopt;
  // digits proportional to (3, 2)
  if (d.digits[0] == 0 || d.digits[0] * 2 != d.digits[1] * 3) return std::nullopt;
  Rational c = d.digits[0] / 3;
  Rational lambda = 4 * c * d.betas[0];  // sequence == lambda * b
  if (s.is_absolute()) lambda = abs(lambda);
  Rational scale = lambda * rpow(Rational(1, 4), min_block);

  ImportedPatternWitness w;
  w.scale = scale;
  w.from_block = min_block;
  Rational a = scale * Rational(2, 3), b = scale * Rational(1);
  w.witness = {rmin(a, b), rmax(a, b)};

  // unconditional grid proofs on the canonical pattern
  BlockMixtureData canonical{{Rational(3, 4), Rational(1, 2)}, {Rational(1)}, {Rational(1, 4)}};
  const int kGridSteps = 200;
  for (int i = 0; i <= kGridSteps; ++i) {
    Rational t = Rational(2, 3) + Rational(i, 3 * kGridSteps);
    auto proof = decide_membership(canonical, t);
    if (!proof || !proof->member) return std::nullopt;
    w.grid.push_back(t);
    w.grid_proofs.push_back(*proof);
  }

  // density exhibition: every witness point within error_bound of inner
  long ddepth = std::min<long>(depth, 16);
  SubsumApproximation ap = approximate(s, ddepth);
  Rational dist =
      directed_hausdorff(IntervalUnion::single(w.witness.a, w.witness.b), ap.inner);
  if (dist > ap.error_bound) return std::nullopt;
  w.density_depth = ddepth;
  w.density_bound = dist;
  return w;
}

}  // namespace

std::string to_string(Verdict v) { return verdict_name(v); }

std::optional<CantorCert> kakeya_cantor_test(const SummableSequence& s, long horizon) {
  return kakeya_test<CantorCert>(s, horizon, true);
}

std::optional<IntervalCert> kakeya_interval_test(const SummableSequence& s, long horizon) {
  return kakeya_test<IntervalCert>(s, horizon, false);
}

CantorvalOutcome cantorval_test(const SummableSequence& s, long horizon, long depth) {
  CantorvalOutcome out;
  const auto* d = std::get_if<BlockMixtureData>(&s.kind());
  if (!d) {
    out.status = CantorvalOutcome::Status::NoCertificate;
    out.detail = "no interval-witness route for this kind";
    return out;
  }
  auto prof = s.sign_profile();
  if (!prof.monotone_from) {
    out.status = CantorvalOutcome::Status::PreconditionFailed;
    out.detail = "condition (iii) not certified: |x(n)| not eventually nonincreasing";
    return out;
  }
  long L = static_cast<long>(d->digits.size());
  long M = override_end(s);
  long min_block = (M + L - 1) / L;  // blocks below this may be modified

  auto an = analyze_block(*d, s.is_absolute());
  if (!an) {
    out.detail = "block analysis failed";
    return out;
  }
  // condition (ii): positions with certified strict dominance
  std::vector<int> positions;
  long ii_from = std::max(an->sign_from, min_block);
  for (long p = 0; p < L; ++p) {
    if (an->strict_from[p]) {
      positions.push_back(static_cast<int>(p));
      ii_from = std::max(ii_from, *an->strict_from[p]);
    }
  }
  if (positions.empty()) {
    out.detail = "condition (ii) fails: no block position with eventual strict dominance";
    return out;
  }
  // exact verification through the horizon
  long checked_block = std::max(ii_from, horizon / L);
  for (long j = ii_from; j <= checked_block; ++j) {
    for (int p : positions) {
      long n = j * L + p + 1;
      if (!strict_at(s, n)) {
        out.detail = "condition (ii) exact check failed at n=" + std::to_string(n);
        return out;
      }
    }
  }

  // condition (i)
  IntervalWitnessVariant witness;
  auto run = digit_run_witness(*d, s.is_absolute(), min_block);
  if (run) {
    witness = *run;
  } else {
    auto imp = imported_pattern_witness(s, *d, min_block, depth);
    if (!imp) {
      out.detail = "condition (i): no certified interval witness";
      return out;
    }
    witness = *imp;
  }

  CantorvalCert cert;
  cert.ii_positions = std::move(positions);
  cert.ii_from_block = ii_from;
  cert.ii_checked_block = checked_block;
  cert.ii_continuation =
      d->betas.size() == 1 ? Continuation::BlockSelfSimilar : Continuation::GeomDominance;
  cert.monotone_from = *prof.monotone_from;
  cert.interval = std::move(witness);
  out.status = CantorvalOutcome::Status::Certified;
  out.cert = std::move(cert);
  return out;
}

Classification classify(const SummableSequence& s, long horizon, long depth) {
  if (s.is_c00() || s.tail_sum_abs(0).hi == 0)
    throw std::invalid_argument(
        "classify: c00 input (E(x) is a finite set, outside the trichotomy)");
  Classification cls;
  cls.horizon = horizon;

  auto cantor = kakeya_cantor_test(s, horizon);
  auto interval = kakeya_interval_test(s, horizon);
  auto cantorval = cantorval_test(s, horizon, depth);

  int count = (cantor ? 1 : 0) + (interval ? 1 : 0) +
              (cantorval.status == CantorvalOutcome::Status::Certified ? 1 : 0);
  if (count > 1)
    throw std::logic_error("classify: mutually exclusive certificates both verified");

  if (cantor) {
    cls.verdict = Verdict::CantorLike;
    cls.certificate = *cantor;
  } else if (interval) {
    cls.verdict = Verdict::FiniteUnionOfIntervals;
    cls.certificate = *interval;
  } else if (cantorval.status == CantorvalOutcome::Status::Certified) {
    cls.verdict = Verdict::Cantorval;
    cls.certificate = *cantorval.cert;
  } else {
    cls.verdict = Verdict::Undetermined;
    cls.diagnostic = "no certificate found; cantorval: " + cantorval.detail;
  }
  return cls;
}

}  // namespace achieveset
