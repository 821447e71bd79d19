#pragma once

#include <achieveset/sequence.hpp>

#include <optional>
#include <vector>

namespace achieveset {

// Exact membership of a rational t in E(x) for single-ratio block patterns
// whose ratio is a unit fraction 1/B. Writing t = sum_j c_j * beta * q^j with
// c_j ranging over the per-block subset sums C, the normalized remainders
// u_{j+1} = B * (u_j - c_j) stay on rationals with a fixed denominator, so
// membership reduces to an infinite-path search in a finite directed graph.
struct OrbitWitness {
  bool member = false;
  // when member: chosen normalized per-block subset sums; the suffix starting
  // at cycle_start repeats forever (u_{cycle_start} == u_{path.size()})
  std::vector<Rational> digit_path;
  long cycle_start = 0;
};

// nullopt when not applicable (m != 1, q not 1/B) or the state space
// exceeds state_cap.
std::optional<OrbitWitness> decide_membership(const BlockMixtureData& d, const Rational& t,
                                              std::size_t state_cap = 200000);

// subset sums of a digit vector (sorted, deduplicated)
std::vector<Rational> subset_sums(const std::vector<Rational>& digits);

}  // namespace achieveset
