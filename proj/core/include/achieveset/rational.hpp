#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace achieveset {

using Int = boost::multiprecision::cpp_int;
// Arbitrary-precision rational, always in lowest terms with positive denominator.
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long num, long den = 1) { return Rational(num, den); }

inline Int num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline int sign_of(const Rational& r) { return r.sign(); }

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

inline Rational rmin(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational rmax(const Rational& a, const Rational& b) { return a < b ? b : a; }

// x^k for integer k (k may be negative when x != 0)
Rational rpow(const Rational& x, long k);

// floor(r) as Int
Int rfloor(const Rational& r);
Int rceil(const Rational& r);

// Parses "p", "p/q", with optional leading '-'. Throws std::invalid_argument.
Rational parse_rational(const std::string& s);
std::optional<Rational> try_parse_rational(const std::string& s);

// "p" when the denominator is 1, else "p/q"; lowest terms.
std::string to_string(const Rational& r);
std::string to_string(const Int& i);

}  // namespace achieveset
