#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nmr/default_logic.hpp"
#include "nmr/equivalence.hpp"
#include "nmr/partition.hpp"
#include "nmr/ranking.hpp"
#include "nmr/threshold.hpp"

// Reports printed by the command-line tool. Every report has a JSON form that
// parses back to the same values (world ids and exact rationals) and a text
// form for people.
namespace nmr::report {

using json = nlohmann::json;

struct Extensions {
  Signature signature;
  std::vector<Extension> extensions;
};

struct ThresholdRun {
  struct Entry {
    FilteredSequence sequence;
    WorldSet context;
    std::vector<Rational> query_probabilities;
  };
  Signature signature;
  Rational epsilon;
  bool all_orders = false;
  std::vector<Formula> thresholds;
  std::vector<Formula> queries;
  std::vector<Entry> sequences;
};

struct Partitions {
  Signature signature;
  std::string mode;
  std::optional<Rational> epsilon;
  struct Rule {
    std::string name;
    std::string cond;
    std::string res;
    bool operator==(const Rule&) const = default;
  };
  std::vector<Rule> rules;
  std::vector<PartitionSequence> sequences;
};

struct Ranking {
  Signature signature;
  std::vector<RankedExtension> ranking;
};

struct Check {
  std::vector<CheckItem> items;
  bool passed() const;
};

json to_json(const Extensions& r);
json to_json(const ThresholdRun& r);
json to_json(const Partitions& r);
json to_json(const Ranking& r);
json to_json(const Check& r);

// Inverses of to_json. Throw ParseError on malformed documents.
Extensions extensions_from_json(const json& j);
ThresholdRun threshold_from_json(const json& j);
Partitions partitions_from_json(const json& j);
Ranking ranking_from_json(const json& j);

std::string to_text(const Extensions& r);
std::string to_text(const ThresholdRun& r);
std::string to_text(const Partitions& r);
std::string to_text(const Ranking& r);
std::string to_text(const Check& r);

// "{a a' !b} {a a' b}" rendering of a world set.
std::string describe_worlds(const Signature& sig, const WorldSet& worlds);

}  // namespace nmr::report
