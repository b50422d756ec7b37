#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nmr/default_logic.hpp"
#include "nmr/formula.hpp"
#include "nmr/rational.hpp"
#include "nmr/signature.hpp"
#include "nmr/threshold.hpp"
#include "nmr/world_model.hpp"
#include "nmr/world_set.hpp"

namespace nmr {

// A nonmonotonic rule ⟨cond; res⟩. `cond` is judged against the current
// context (the worlds still in play).
struct NmRule {
  std::string name;
  // Human-readable rendering of the condition.
  std::string cond_text;
  std::function<bool(const WorldSet&)> cond;
  Formula res;
  WorldSet res_models;
  // Optional numeric reading of the condition for traces (threshold rules
  // report the weighted proportion of res in the context).
  std::function<std::optional<Rational>(const WorldSet&)> measure;
};

// ⟨□α ∧ ◇γ; γ⟩ for each rule. Throws SemanticError unless every rule is normal.
std::vector<NmRule> default_rules_of(const DefaultTheory& theory);

// ⟨%(φ) ≥ 1 − ε; φ⟩ for each φ in T. A zero-mass context fails the condition.
// The rules keep a reference to `m`.
std::vector<NmRule> threshold_rules_of(const ThresholdCollection& c, const WorldModel& m, const ThresholdParams& p);

// One rule application. A vacuous application (res already true throughout
// the context) produces no class.
struct Application {
  std::string rule;
  std::optional<std::size_t> class_index;
  std::optional<Rational> value;

  bool vacuous() const { return !class_index.has_value(); }
  bool operator==(const Application&) const = default;
};

struct PartitionSequence {
  // ⟨W_0, ..., W_l⟩, pairwise disjoint and covering every world; l ≥ 1.
  std::vector<WorldSet> classes;
  // Every application in order, vacuous ones included.
  std::vector<Application> applications;

  // Names of the rules that produced inner classes W_1..W_{l-1}.
  std::vector<std::string> applied() const;
  bool operator==(const PartitionSequence&) const = default;
};

// One run of the generic process. W_0 holds the worlds violating some member
// of `background`; at each step the earliest rule in `strategy` that is
// unapplied and whose cond holds is applied. Rules absent from `strategy`
// follow in list order.
PartitionSequence run_partition(const Signature& sig, const std::vector<Formula>& background,
                                const std::vector<NmRule>& rules, const std::vector<std::string>& strategy);

// Every sequence reachable under some choice order, deduplicated on
// (classes, applications) and sorted canonically. Throws CapExceeded when
// there are more than `max_rules` rules.
std::vector<PartitionSequence> enumerate_partition_sequences(const Signature& sig,
                                                             const std::vector<Formula>& background,
                                                             const std::vector<NmRule>& rules,
                                                             std::size_t max_rules = kDefaultRuleCap);

// W_l.
const WorldSet& final_theory(const PartitionSequence& ps);

// Disjoint cover of every world with l ≥ 1.
bool is_partition_sequence(const PartitionSequence& ps, std::size_t world_count);

}  // namespace nmr
