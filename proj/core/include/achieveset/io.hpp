#pragma once

#include <achieveset/classify.hpp>
#include <achieveset/families.hpp>
#include <achieveset/subsum.hpp>

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

// single-header vendored nlohmann/json
#include <json.hpp>

namespace achieveset {

using Json = nlohmann::ordered_json;

// Serializable family descriptor. Rationals travel as "p/q" strings in
// lowest terms; ratio entries may be {"lo","hi"} enclosures.
struct FamilySpec {
  std::string kind;
  std::optional<Rational> q;
  std::vector<Rational> betas;
  std::vector<Enclosure> ratios;
  std::vector<Rational> exponents;
  std::vector<Rational> digits;
  std::vector<Rational> qs;
  std::vector<Rational> values;
  std::vector<Rational> t;
  std::optional<long> progressions;
  std::vector<std::vector<Rational>> blocks;
  std::vector<Rational> epsilons;
  std::vector<long> offsets;
  std::optional<Rational> tolerance;
};

struct BuiltFamily {
  SummableSequence seq;
  std::optional<ClosedInterval> predicted;   // spaceability / gliding-hump
  std::optional<GlidingHump> gliding;        // full gliding-hump payload
  std::vector<std::string> warnings;
};

FamilySpec family_from_json(const Json& j);
Json family_to_json(const FamilySpec& spec);
BuiltFamily build_family(const FamilySpec& spec);

// canonical descriptor: the spec echoed plus derived metadata
Json descriptor_json(const FamilySpec& spec);

Json interval_union_to_json(const IntervalUnion& u);
IntervalUnion interval_union_from_json(const Json& j);

Json approximation_to_json(const SubsumApproximation& ap);
SubsumApproximation approximation_from_json(const Json& j);

Json classification_to_json(const Classification& c);
Classification classification_from_json(const Json& j);

std::string rational_str(const Rational& r);
Rational rational_from_json(const Json& j);
Json enclosure_to_json(const Enclosure& e);
Enclosure enclosure_from_json(const Json& j);

// CSV row for cmd_sweep: param, verdict, certificate n0, error bound,
// component count at depth. UTF-8, LF endings; header included.
std::string sweep_csv_header();
std::string sweep_csv_row(const Rational& param, const Classification& cls,
                          const SubsumApproximation& ap);

}  // namespace achieveset
