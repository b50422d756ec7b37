#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nmr/formula.hpp"
#include "nmr/signature.hpp"
#include "nmr/world_set.hpp"

namespace nmr {

inline constexpr std::size_t kDefaultRuleCap = 12;

enum class RuleKind { kNormal, kSemiNormal, kGeneral };

const char* to_string(RuleKind kind);

// prerequisite : M justification_1, ..., M justification_n / consequent
struct DefaultRule {
  std::string name;
  Formula prerequisite;
  std::vector<Formula> justifications;
  Formula consequent;

  // Normal: the single justification is the consequent itself. Semi-normal:
  // the single justification is a conjunction with the consequent among its
  // conjuncts. Decided syntactically.
  RuleKind kind() const;
};

std::string to_string(const DefaultRule& rule);

// ⟨D, F⟩ over a fixed signature, with the model sets of every component
// precomputed.
class DefaultTheory {
 public:
  struct CompiledRule {
    WorldSet prerequisite;
    std::vector<WorldSet> justifications;
    WorldSet consequent;
  };

  // Throws SemanticError on repeated rule names or atoms outside `sig`.
  DefaultTheory(Signature sig, std::vector<Formula> facts, std::vector<DefaultRule> defaults);

  const Signature& signature() const { return sig_; }
  const std::vector<Formula>& facts() const { return facts_; }
  const std::vector<DefaultRule>& defaults() const { return defaults_; }
  const WorldSet& fact_models() const { return fact_models_; }
  const CompiledRule& compiled(std::size_t rule) const { return compiled_[rule]; }
  // Index into defaults(); throws SemanticError for an unknown name.
  std::size_t rule_index(const std::string& name) const;
  bool all_normal() const;

 private:
  Signature sig_;
  std::vector<Formula> facts_;
  std::vector<DefaultRule> defaults_;
  WorldSet fact_models_;
  std::vector<CompiledRule> compiled_;
};

struct Extension {
  // Generating defaults, sorted by name.
  std::vector<std::string> generating;
  // models_of(F ∪ consequents of the generating defaults).
  WorldSet model_set;
  bool inconsistent = false;

  bool operator==(const Extension&) const = default;
};

// Model set of Γ(E) where E is given by its models: least fixed point from
// models_of(F), firing a rule when its prerequisite holds in every current
// world and each justification is satisfiable within `e_models`.
WorldSet gamma_fixpoint(const DefaultTheory& theory, const WorldSet& e_models);

// Names (sorted) of the rules that fire while computing Γ(E).
std::vector<std::string> fired_rules(const DefaultTheory& theory, const WorldSet& e_models);

bool is_extension(const DefaultTheory& theory, const WorldSet& candidate);

// Every extension, found by testing models_of(F ∪ consequents(S)) for each
// subset S of the defaults. Sorted by model set. Throws CapExceeded when the
// theory has more than `max_defaults` rules.
std::vector<Extension> enumerate_extensions(const DefaultTheory& theory, std::size_t max_defaults = kDefaultRuleCap);

// All orderings of `extension.generating` in which each prerequisite is
// entailed by F plus the consequents applied before it, in lexicographic
// order of rule names.
std::vector<std::vector<std::string>> generating_orderings(const DefaultTheory& theory, const Extension& extension);

}  // namespace nmr
