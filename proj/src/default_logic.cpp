#include "nmr/default_logic.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "nmr/error.hpp"
#include "nmr/semantics.hpp"

namespace nmr {

const char* to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::kNormal: return "normal";
    case RuleKind::kSemiNormal: return "semi-normal";
    case RuleKind::kGeneral: return "general";
  }
  return "?";
}

RuleKind DefaultRule::kind() const {
  if (justifications.size() != 1) return RuleKind::kGeneral;
  if (justifications.front() == consequent) return RuleKind::kNormal;
  if (has_conjunct(justifications.front(), consequent)) return RuleKind::kSemiNormal;
  return RuleKind::kGeneral;
}

std::string to_string(const DefaultRule& rule) {
  std::string out = rule.name + ": " + to_string(rule.prerequisite) + " ::";
  for (std::size_t j = 0; j < rule.justifications.size(); ++j) {
    out += j == 0 ? " " : ", ";
    out += to_string(rule.justifications[j]);
  }
  return out + " / " + to_string(rule.consequent);
}

DefaultTheory::DefaultTheory(Signature sig, std::vector<Formula> facts, std::vector<DefaultRule> defaults)
    : sig_(std::move(sig)), facts_(std::move(facts)), defaults_(std::move(defaults)) {
  fact_models_ = models_of(facts_, sig_);
  std::vector<std::string> names;
  for (const auto& rule : defaults_) {
    if (std::find(names.begin(), names.end(), rule.name) != names.end()) {
      throw SemanticError("duplicate default name '" + rule.name + "'");
    }
    names.push_back(rule.name);
    CompiledRule c{models_of(rule.prerequisite, sig_), {}, models_of(rule.consequent, sig_)};
    for (const auto& j : rule.justifications) c.justifications.push_back(models_of(j, sig_));
    compiled_.push_back(std::move(c));
  }
}

std::size_t DefaultTheory::rule_index(const std::string& name) const {
  for (std::size_t i = 0; i < defaults_.size(); ++i) {
    if (defaults_[i].name == name) return i;
  }
  throw SemanticError("no default named '" + name + "'");
}

bool DefaultTheory::all_normal() const {
  return std::all_of(defaults_.begin(), defaults_.end(),
                     [](const DefaultRule& r) { return r.kind() == RuleKind::kNormal; });
}

namespace {

struct GammaRun {
  WorldSet models;
  std::vector<std::size_t> fired;
};

GammaRun run_gamma(const DefaultTheory& theory, const WorldSet& e_models) {
  const std::size_t n = theory.defaults().size();
  // ¬β ∉ E  ⟺  E ⊄ models(¬β)  ⟺  β has a model inside E.
  std::vector<bool> justified(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& js = theory.compiled(i).justifications;
    justified[i] = std::all_of(js.begin(), js.end(), [&](const WorldSet& j) { return j.intersects(e_models); });
  }
  GammaRun run{theory.fact_models(), {}};
  std::vector<bool> fired(n, false);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (fired[i] || !justified[i]) continue;
      if (!run.models.is_subset_of(theory.compiled(i).prerequisite)) continue;
      run.models &= theory.compiled(i).consequent;
      fired[i] = true;
      run.fired.push_back(i);
      changed = true;
    }
  }
  return run;
}

std::vector<std::string> sorted_names(const DefaultTheory& theory, const std::vector<std::size_t>& rules) {
  std::vector<std::string> out;
  out.reserve(rules.size());
  for (std::size_t i : rules) out.push_back(theory.defaults()[i].name);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

WorldSet gamma_fixpoint(const DefaultTheory& theory, const WorldSet& e_models) {
  return run_gamma(theory, e_models).models;
}

std::vector<std::string> fired_rules(const DefaultTheory& theory, const WorldSet& e_models) {
  return sorted_names(theory, run_gamma(theory, e_models).fired);
}

bool is_extension(const DefaultTheory& theory, const WorldSet& candidate) {
  return gamma_fixpoint(theory, candidate) == candidate;
}

std::vector<Extension> enumerate_extensions(const DefaultTheory& theory, std::size_t max_defaults) {
  const std::size_t n = theory.defaults().size();
  if (n > max_defaults) {
    throw CapExceeded("theory has " + std::to_string(n) + " defaults; the cap is " + std::to_string(max_defaults));
  }
  std::unordered_map<WorldSet, Extension> found;
  for (std::size_t subset = 0; subset < (std::size_t{1} << n); ++subset) {
    WorldSet candidate = theory.fact_models();
    for (std::size_t i = 0; i < n; ++i) {
      if ((subset >> i) & 1U) candidate &= theory.compiled(i).consequent;
    }
    if (found.contains(candidate)) continue;
    GammaRun run = run_gamma(theory, candidate);
    if (run.models != candidate) continue;
    Extension e{sorted_names(theory, run.fired), candidate, candidate.empty()};
    found.emplace(std::move(candidate), std::move(e));
  }
  std::vector<Extension> out;
  out.reserve(found.size());
  for (auto& [models, e] : found) out.push_back(std::move(e));
  std::sort(out.begin(), out.end(), [](const Extension& a, const Extension& b) {
    if (a.model_set != b.model_set) return a.model_set < b.model_set;
    return a.generating < b.generating;
  });
  return out;
}

std::vector<std::vector<std::string>> generating_orderings(const DefaultTheory& theory, const Extension& extension) {
  std::vector<std::size_t> rules;
  for (const auto& name : extension.generating) rules.push_back(theory.rule_index(name));
  std::sort(rules.begin(), rules.end(), [&](std::size_t a, std::size_t b) {
    return theory.defaults()[a].name < theory.defaults()[b].name;
  });

  std::vector<std::vector<std::string>> out;
  std::vector<std::string> prefix;
  std::vector<bool> used(rules.size(), false);
  std::function<void(const WorldSet&)> extend = [&](const WorldSet& context) {
    if (prefix.size() == rules.size()) {
      out.push_back(prefix);
      return;
    }
    for (std::size_t k = 0; k < rules.size(); ++k) {
      if (used[k]) continue;
      const auto& compiled = theory.compiled(rules[k]);
      if (!context.is_subset_of(compiled.prerequisite)) continue;
      used[k] = true;
      prefix.push_back(theory.defaults()[rules[k]].name);
      extend(context & compiled.consequent);
      prefix.pop_back();
      used[k] = false;
    }
  };
  extend(theory.fact_models());
  return out;
}

}  // namespace nmr
