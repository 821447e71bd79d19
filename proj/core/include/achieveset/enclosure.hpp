#pragma once

#include <achieveset/rational.hpp>

namespace achieveset {

// Working precision (bits) for outward-rounded operations that cannot be
// exact (roots, rational powers). Default 128, overridable via the
// ACHIEVESET_PRECISION environment variable or set_precision().
unsigned precision();
void set_precision(unsigned bits);

// Closed rational interval [lo, hi] guaranteed to contain the exact real
// value of the quantity it stands for. Field arithmetic on rational
// endpoints is exact; only roots/powers round outward.
struct Enclosure {
  Rational lo;
  Rational hi;

  Enclosure() : lo(0), hi(0) {}
  explicit Enclosure(const Rational& v) : lo(v), hi(v) {}
  Enclosure(Rational l, Rational h);

  bool is_point() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }

  // sign certainty
  bool certainly_positive() const { return lo > 0; }
  bool certainly_negative() const { return hi < 0; }
  bool certainly_nonneg() const { return lo >= 0; }
};

Enclosure operator+(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a, const Enclosure& b);
Enclosure operator-(const Enclosure& a);
Enclosure operator*(const Enclosure& a, const Enclosure& b);
Enclosure operator*(const Rational& c, const Enclosure& a);
// requires b sign-definite (0 not in b)
Enclosure operator/(const Enclosure& a, const Enclosure& b);

Enclosure abs(const Enclosure& a);
Enclosure hull(const Enclosure& a, const Enclosure& b);

// a^k, integer k >= 0 (monotone-aware; exact endpoints)
Enclosure pow(const Enclosure& a, unsigned long k);

// Certified comparisons: true only when the enclosures separate.
bool certainly_less(const Enclosure& a, const Enclosure& b);
bool certainly_leq(const Enclosure& a, const Enclosure& b);
bool disjoint(const Enclosure& a, const Enclosure& b);

// Coarsen endpoints to dyadics with ~bits fractional bits, rounding outward.
Enclosure round_out(const Enclosure& a, unsigned bits);

// k-th root of a nonnegative rational, outward-rounded to 2^-bits relative
// width. Exact (degenerate) when r is a perfect k-th power.
Enclosure kth_root(const Rational& r, unsigned long k, unsigned bits);

// x^(p) for rational p and x > 0, outward rounded. Exact when p is an integer.
Enclosure pow_rational(const Rational& x, const Rational& p, unsigned bits);

}  // namespace achieveset
