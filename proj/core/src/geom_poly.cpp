#include <achieveset/geom_poly.hpp>

#include <algorithm>
#include <stdexcept>

namespace achieveset {

namespace {
constexpr long kSearchCap = 1L << 22;
}

std::optional<GeomPoly> GeomPoly::make(std::vector<Rational> coeffs,
                                       std::vector<Enclosure> ratios) {
  if (coeffs.size() != ratios.size())
    throw std::invalid_argument("GeomPoly: length mismatch");
  for (const auto& r : ratios)
    if (!(r.lo > 0 && r.hi < 1))
      throw std::invalid_argument("GeomPoly: ratio not certified inside (0,1)");

  // merge identical exact ratios
  std::vector<Rational> c;
  std::vector<Enclosure> rho;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    bool merged = false;
    for (std::size_t j = 0; j < rho.size(); ++j) {
      if (rho[j].is_point() && ratios[i].is_point() && rho[j].lo == ratios[i].lo) {
        c[j] += coeffs[i];
        merged = true;
        break;
      }
    }
    if (!merged) {
      c.push_back(coeffs[i]);
      rho.push_back(ratios[i]);
    }
  }
  // drop coefficients that cancelled
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] == 0) {
      c.erase(c.begin() + i);
      rho.erase(rho.begin() + i);
    }
  }
  // certified strict ordering (descending); any overlap between distinct
  // enclosures defeats certification
  std::vector<std::size_t> idx(c.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j)
      if (!disjoint(rho[idx[i]], rho[idx[j]])) return std::nullopt;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t x, std::size_t y) { return rho[x].lo > rho[y].lo; });
  GeomPoly p;
  for (std::size_t i : idx) {
    p.c_.push_back(c[i]);
    p.rho_.push_back(rho[i]);
  }
  return p;
}

bool GeomPoly::all_exact() const {
  for (const auto& r : rho_)
    if (!r.is_point()) return false;
  return true;
}

Enclosure GeomPoly::value(long n) const {
  Enclosure acc{Rational(0)};
  for (std::size_t i = 0; i < c_.size(); ++i)
    acc = acc + c_[i] * pow(rho_[i], static_cast<unsigned long>(n));
  return acc;
}

std::optional<GeomPoly::EventualSign> GeomPoly::eventual_sign() const {
  if (c_.empty()) return EventualSign{0, 1};
  if (c_.size() == 1) return EventualSign{sign_of(c_[0]), 1};
  // find n with |c_0| rho_0^n > sum_{j>0} |c_j| rho_j^n, certified; the real
  // inequality is upward closed in n because rho_j < rho_0
  for (long n = 1; n <= kSearchCap; n = (n < 16 ? n + 1 : n * 2)) {
    Enclosure lead = abs(c_[0]) * pow(rho_[0], static_cast<unsigned long>(n));
    Enclosure rest{Rational(0)};
    for (std::size_t j = 1; j < c_.size(); ++j)
      rest = rest + abs(c_[j]) * pow(rho_[j], static_cast<unsigned long>(n));
    if (certainly_less(rest, lead)) return EventualSign{sign_of(c_[0]), n};
  }
  return std::nullopt;
}

std::optional<long> GeomPoly::nonneg_from(long limit, bool strict) const {
  auto es = eventual_sign();
  if (!es) return std::nullopt;
  if (es->sign == 0) return strict ? std::nullopt : std::optional<long>(1);
  if (es->sign < 0) return std::nullopt;
  long n0 = es->from;
  if (n0 > limit) return std::nullopt;
  while (n0 > 1) {
    Enclosure v = value(n0 - 1);
    bool ok = strict ? v.certainly_positive() : v.certainly_nonneg();
    if (!ok) break;
    --n0;
  }
  return n0;
}

Enclosure GeomPoly::tail_signed(long n) const {
  Enclosure acc{Rational(0)};
  for (std::size_t i = 0; i < c_.size(); ++i) {
    Enclosure rn1 = pow(rho_[i], static_cast<unsigned long>(n + 1));
    Enclosure one_minus(Rational(1) - rho_[i].hi, Rational(1) - rho_[i].lo);
    acc = acc + c_[i] * (rn1 / one_minus);
  }
  return acc;
}

Enclosure GeomPoly::tail_abs(long n) const {
  if (c_.empty()) return Enclosure(Rational(0));
  auto es = eventual_sign();
  if (es && es->sign != 0) {
    long K = es->from;
    if (n >= K - 1) {
      Enclosure t = tail_signed(n);
      return es->sign > 0 ? t : -t;
    }
    Enclosure acc{Rational(0)};
    for (long k = n + 1; k <= K - 1; ++k) acc = acc + abs(value(k));
    return acc + tail_abs(K - 1);
  }
  // fallback: triangle bounds (upper) and per-term reverse triangle (lower)
  Enclosure upper{Rational(0)};
  for (std::size_t i = 0; i < c_.size(); ++i) {
    Enclosure rn1 = pow(rho_[i], static_cast<unsigned long>(n + 1));
    Enclosure one_minus(Rational(1) - rho_[i].hi, Rational(1) - rho_[i].lo);
    upper = upper + abs(c_[i]) * (rn1 / one_minus);
  }
  Rational lower(0);
  if (c_.size() >= 1) {
    Enclosure lead = abs(c_[0]) * (pow(rho_[0], static_cast<unsigned long>(n + 1)) /
                                   Enclosure(Rational(1) - rho_[0].hi, Rational(1) - rho_[0].lo));
    Enclosure rest{Rational(0)};
    for (std::size_t j = 1; j < c_.size(); ++j) {
      Enclosure rn1 = pow(rho_[j], static_cast<unsigned long>(n + 1));
      Enclosure one_minus(Rational(1) - rho_[j].hi, Rational(1) - rho_[j].lo);
      rest = rest + abs(c_[j]) * (rn1 / one_minus);
    }
    Rational cand = lead.lo - rest.hi;
    if (cand > lower) lower = cand;
  }
  return Enclosure(lower, upper.hi);
}

GeomPoly GeomPoly::scaled(const Rational& f) const {
  GeomPoly p;
  if (f == 0) return p;
  p.rho_ = rho_;
  p.c_.reserve(c_.size());
  for (const auto& c : c_) p.c_.push_back(c * f);
  return p;
}

}  // namespace achieveset
