#include <achieveset/enclosure.hpp>

#include <atomic>
#include <cstdlib>

namespace achieveset {

Rational rpow(const Rational& x, long k) {
  if (k == 0) return Rational(1);
  if (k < 0) {
    if (x == 0) throw std::domain_error("rpow: 0 to negative power");
    return Rational(1) / rpow(x, -k);
  }
  Rational base = x;
  Rational acc(1);
  unsigned long e = static_cast<unsigned long>(k);
  while (e) {
    if (e & 1) acc *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return acc;
}

Int rfloor(const Rational& r) {
  Int q = num(r) / den(r);
  if (r < 0 && q * den(r) != num(r)) --q;
  return q;
}

Int rceil(const Rational& r) { return -rfloor(-r); }

Rational parse_rational(const std::string& s) {
  auto v = try_parse_rational(s);
  if (!v) throw std::invalid_argument("not a rational: '" + s + "'");
  return *v;
}

std::optional<Rational> try_parse_rational(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto slash = s.find('/');
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  try {
    if (slash == std::string::npos) {
      if (!is_int(s)) return std::nullopt;
      return Rational(Int(s));
    }
    std::string p = s.substr(0, slash), q = s.substr(slash + 1);
    if (!is_int(p) || !is_int(q)) return std::nullopt;
    Int qi(q);
    if (qi == 0) return std::nullopt;
    return Rational(Int(p), qi);
  } catch (...) {
    return std::nullopt;
  }
}

std::string to_string(const Int& i) { return i.str(); }

std::string to_string(const Rational& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

namespace {
std::atomic<unsigned> g_precision{0};  // 0 = uninitialized

unsigned init_precision() {
  if (const char* env = std::getenv("ACHIEVESET_PRECISION")) {
    long v = std::atol(env);
    if (v >= 64) return static_cast<unsigned>(v);
  }
  return 128;
}
}  // namespace

unsigned precision() {
  unsigned p = g_precision.load(std::memory_order_relaxed);
  if (p == 0) {
    p = init_precision();
    g_precision.store(p, std::memory_order_relaxed);
  }
  return p;
}

void set_precision(unsigned bits) {
  g_precision.store(bits < 64 ? 64 : bits, std::memory_order_relaxed);
}

Enclosure::Enclosure(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) throw std::invalid_argument("Enclosure: lo > hi");
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  return Enclosure(a.lo + b.lo, a.hi + b.hi);
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
  return Enclosure(a.lo - b.hi, a.hi - b.lo);
}

Enclosure operator-(const Enclosure& a) { return Enclosure(-a.hi, -a.lo); }

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return Enclosure(rmin(rmin(p1, p2), rmin(p3, p4)), rmax(rmax(p1, p2), rmax(p3, p4)));
}

Enclosure operator*(const Rational& c, const Enclosure& a) {
  if (c >= 0) return Enclosure(c * a.lo, c * a.hi);
  return Enclosure(c * a.hi, c * a.lo);
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  if (b.contains(Rational(0)))
    throw std::domain_error("Enclosure division by interval containing 0");
  Rational p1 = a.lo / b.lo, p2 = a.lo / b.hi, p3 = a.hi / b.lo, p4 = a.hi / b.hi;
  return Enclosure(rmin(rmin(p1, p2), rmin(p3, p4)), rmax(rmax(p1, p2), rmax(p3, p4)));
}

Enclosure abs(const Enclosure& a) {
  if (a.lo >= 0) return a;
  if (a.hi <= 0) return -a;
  return Enclosure(Rational(0), rmax(-a.lo, a.hi));
}

Enclosure hull(const Enclosure& a, const Enclosure& b) {
  return Enclosure(rmin(a.lo, b.lo), rmax(a.hi, b.hi));
}

Enclosure pow(const Enclosure& a, unsigned long k) {
  if (k == 0) return Enclosure(Rational(1));
  if (a.lo >= 0) return Enclosure(rpow(a.lo, k), rpow(a.hi, k));
  if (a.hi <= 0) {
    Rational lo = rpow(a.lo, k), hi = rpow(a.hi, k);
    return (k % 2 == 0) ? Enclosure(hi, lo) : Enclosure(lo, hi);
  }
  // straddles zero
  Rational lo = rpow(a.lo, k), hi = rpow(a.hi, k);
  if (k % 2 == 0) return Enclosure(Rational(0), rmax(lo, hi));
  return Enclosure(lo, hi);
}

bool certainly_less(const Enclosure& a, const Enclosure& b) { return a.hi < b.lo; }
bool certainly_leq(const Enclosure& a, const Enclosure& b) { return a.hi <= b.lo; }
bool disjoint(const Enclosure& a, const Enclosure& b) { return a.hi < b.lo || b.hi < a.lo; }

Enclosure round_out(const Enclosure& a, unsigned bits) {
  Int scale = Int(1) << bits;
  Rational lo = Rational(rfloor(a.lo * scale), scale);
  Rational hi = Rational(rceil(a.hi * scale), scale);
  return Enclosure(lo, hi);
}

namespace {
// floor of the k-th root of a nonnegative integer
Int iroot_floor(const Int& n, unsigned long k) {
  if (n <= 1 || k == 1) return n;
  Int lo = 0, hi = 1;
  while (boost::multiprecision::pow(hi, static_cast<unsigned>(k)) <= n) hi <<= 1;
  lo = hi >> 1;
  while (lo < hi - 1) {
    Int mid = (lo + hi) >> 1;
    if (boost::multiprecision::pow(mid, static_cast<unsigned>(k)) <= n)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}
}  // namespace

Enclosure kth_root(const Rational& r, unsigned long k, unsigned bits) {
  if (r < 0) throw std::domain_error("kth_root of negative rational");
  if (k == 0) throw std::domain_error("0th root");
  if (r == 0) return Enclosure(Rational(0));
  if (k == 1) return Enclosure(r);
  // root of (num * 2^(k*bits)) / den: m <= root < m+1 gives a 2^-bits enclosure
  Int scale = Int(1) << bits;
  Int scaled_num = num(r) * boost::multiprecision::pow(scale, static_cast<unsigned>(k));
  // root(num/den) = root(num*den^(k-1)) / den
  Int inner = scaled_num * boost::multiprecision::pow(den(r), static_cast<unsigned>(k - 1));
  Int m = iroot_floor(inner, k);
  Rational lo(m, den(r) * scale);
  if (boost::multiprecision::pow(m, static_cast<unsigned>(k)) == inner) return Enclosure(lo, lo);
  Rational hi(m + 1, den(r) * scale);
  return Enclosure(lo, hi);
}

Enclosure pow_rational(const Rational& x, const Rational& p, unsigned bits) {
  if (x <= 0) throw std::domain_error("pow_rational requires positive base");
  Int ip = num(p);
  Int iq = den(p);
  bool neg = ip < 0;
  if (neg) ip = -ip;
  if (!ip.backend().size() || ip > 1000000 || iq > 1000000)
    throw std::domain_error("pow_rational: exponent out of supported range");
  long a = ip.convert_to<long>();
  long b = iq.convert_to<long>();
  Rational xa = rpow(x, a);  // x^a exactly
  Enclosure root = (b == 1) ? Enclosure(xa) : kth_root(xa, static_cast<unsigned long>(b), bits);
  if (!neg) return root;
  return Enclosure(Rational(1)) / root;
}

}  // namespace achieveset
