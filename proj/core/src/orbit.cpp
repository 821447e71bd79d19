#include <achieveset/orbit.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace achieveset {

std::vector<Rational> subset_sums(const std::vector<Rational>& digits) {
  std::set<Rational> sums{Rational(0)};
  for (const auto& d : digits) {
    std::set<Rational> next = sums;
    for (const auto& s : sums) next.insert(s + d);
    sums = std::move(next);
  }
  return std::vector<Rational>(sums.begin(), sums.end());
}

std::optional<OrbitWitness> decide_membership(const BlockMixtureData& d, const Rational& t,
                                              std::size_t state_cap) {
  if (d.betas.size() != 1) return std::nullopt;
  const Rational& q = d.qs[0];
  if (num(q) != 1) return std::nullopt;
  Int B = den(q);

  std::vector<Rational> C = subset_sums(d.digits);
  Rational neg(0), pos(0);
  for (const auto& dig : d.digits) {
    if (dig < 0) neg += dig;
    if (dig > 0) pos += dig;
  }
  // normalized achievable range over all remaining blocks
  Rational factor = Rational(B, B - 1);
  Rational lo = neg * factor, hi = pos * factor;

  Rational u0 = t / d.betas[0];
  if (u0 < lo || u0 > hi) return OrbitWitness{};

  // reachable states
  std::set<Rational> states;
  std::vector<Rational> frontier{u0};
  while (!frontier.empty()) {
    Rational u = frontier.back();
    frontier.pop_back();
    if (states.count(u)) continue;
    states.insert(u);
    if (states.size() > state_cap) return std::nullopt;
    for (const auto& c : C) {
      Rational v = (u - c) * B;
      if (v >= lo && v <= hi && !states.count(v)) frontier.push_back(v);
    }
  }
  // prune states with no surviving successor
  std::set<Rational> alive = states;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = alive.begin(); it != alive.end();) {
      bool ok = false;
      for (const auto& c : C) {
        Rational v = (*it - c) * B;
        if (v >= lo && v <= hi && alive.count(v)) {
          ok = true;
          break;
        }
      }
      if (!ok) {
        it = alive.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  OrbitWitness w;
  if (!alive.count(u0)) return w;
  w.member = true;
  // follow surviving successors until a state repeats
  std::map<Rational, long> seen;
  Rational u = u0;
  while (!seen.count(u)) {
    seen[u] = static_cast<long>(w.digit_path.size());
    for (const auto& c : C) {
      Rational v = (u - c) * B;
      if (v >= lo && v <= hi && alive.count(v)) {
        w.digit_path.push_back(c);
        u = v;
        break;
      }
    }
  }
  w.cycle_start = seen[u];
  return w;
}

}  // namespace achieveset
