#include "nmr/partition.hpp"

#include <algorithm>
#include <set>

#include "nmr/error.hpp"
#include "nmr/semantics.hpp"

namespace nmr {

std::vector<NmRule> default_rules_of(const DefaultTheory& theory) {
  std::vector<NmRule> out;
  for (std::size_t i = 0; i < theory.defaults().size(); ++i) {
    const DefaultRule& rule = theory.defaults()[i];
    if (rule.kind() != RuleKind::kNormal) {
      throw SemanticError("default '" + rule.name + "' is " + to_string(rule.kind()) +
                          "; partition sequences need a normal theory");
    }
    const WorldSet prereq = theory.compiled(i).prerequisite;
    const WorldSet conseq = theory.compiled(i).consequent;
    NmRule r;
    r.name = rule.name;
    r.cond_text = "box(" + to_string(rule.prerequisite) + ") & dia(" + to_string(rule.consequent) + ")";
    r.cond = [prereq, conseq](const WorldSet& context) {
      return context.is_subset_of(prereq) && context.intersects(conseq);
    };
    r.res = rule.consequent;
    r.res_models = conseq;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<NmRule> threshold_rules_of(const ThresholdCollection& c, const WorldModel& m, const ThresholdParams& p) {
  std::vector<NmRule> out;
  const Rational threshold = p.threshold();
  for (std::size_t i = 0; i < c.thresholds().size(); ++i) {
    const Formula& phi = c.thresholds()[i];
    const WorldSet phi_models = c.threshold_models(i);
    NmRule r;
    r.name = to_string(phi);
    r.cond_text = "%(" + to_string(phi) + ") >= " + to_string(threshold);
    r.measure = [&m, phi_models](const WorldSet& context) -> std::optional<Rational> {
      if (mass(m, context) == 0) return std::nullopt;
      return proportion(m, phi_models, context);
    };
    r.cond = [measure = r.measure, threshold](const WorldSet& context) {
      const auto pr = measure(context);
      return pr.has_value() && *pr >= threshold;
    };
    r.res = phi;
    r.res_models = phi_models;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::string> PartitionSequence::applied() const {
  std::vector<std::string> out;
  for (const auto& a : applications) {
    if (!a.vacuous()) out.push_back(a.rule);
  }
  return out;
}

namespace {

// Mutable state of one partition run.
struct RunState {
  std::vector<WorldSet> classes;
  std::vector<Application> applications;
  std::vector<bool> applied;
  WorldSet context;
};

RunState start(const Signature& sig, const std::vector<Formula>& background, std::size_t rule_count) {
  RunState s;
  s.context = models_of(background, sig);
  s.classes.push_back(s.context.complement());
  s.applied.assign(rule_count, false);
  return s;
}

void apply(RunState& s, const NmRule& rule, std::size_t index) {
  Application a{rule.name, std::nullopt, rule.measure ? rule.measure(s.context) : std::nullopt};
  s.applied[index] = true;
  if (!s.context.is_subset_of(rule.res_models)) {
    a.class_index = s.classes.size();
    s.classes.push_back(s.context - rule.res_models);
    s.context &= rule.res_models;
  }
  s.applications.push_back(std::move(a));
}

PartitionSequence finish(RunState s) {
  s.classes.push_back(std::move(s.context));
  return PartitionSequence{std::move(s.classes), std::move(s.applications)};
}

bool canonical_less(const PartitionSequence& a, const PartitionSequence& b) {
  if (a.classes != b.classes) {
    return std::lexicographical_compare(a.classes.begin(), a.classes.end(), b.classes.begin(), b.classes.end());
  }
  std::vector<std::string> x, y;
  for (const auto& app : a.applications) x.push_back(app.rule);
  for (const auto& app : b.applications) y.push_back(app.rule);
  return x < y;
}

}  // namespace

PartitionSequence run_partition(const Signature& sig, const std::vector<Formula>& background,
                                const std::vector<NmRule>& rules, const std::vector<std::string>& strategy) {
  std::vector<std::size_t> order;
  for (const auto& name : strategy) {
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (rules[i].name == name && std::find(order.begin(), order.end(), i) == order.end()) order.push_back(i);
    }
  }
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (std::find(order.begin(), order.end(), i) == order.end()) order.push_back(i);
  }

  RunState s = start(sig, background, rules.size());
  for (;;) {
    const auto next = std::find_if(order.begin(), order.end(),
                                   [&](std::size_t i) { return !s.applied[i] && rules[i].cond(s.context); });
    if (next == order.end()) break;
    apply(s, rules[*next], *next);
  }
  return finish(std::move(s));
}

std::vector<PartitionSequence> enumerate_partition_sequences(const Signature& sig,
                                                             const std::vector<Formula>& background,
                                                             const std::vector<NmRule>& rules,
                                                             std::size_t max_rules) {
  if (rules.size() > max_rules) {
    throw CapExceeded("partition search has " + std::to_string(rules.size()) + " rules; the cap is " +
                      std::to_string(max_rules));
  }
  // Branching over every qualifying rule at every step reaches exactly the
  // runs of all strategies: the constraints a run places on a strategy only
  // point from earlier applications to later or never-applied rules, so
  // they are acyclic.
  std::vector<PartitionSequence> out;
  std::function<void(const RunState&)> search = [&](const RunState& s) {
    bool leaf = true;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      if (s.applied[i] || !rules[i].cond(s.context)) continue;
      leaf = false;
      RunState next = s;
      apply(next, rules[i], i);
      search(next);
    }
    if (leaf) out.push_back(finish(s));
  };
  search(start(sig, background, rules.size()));

  std::sort(out.begin(), out.end(), canonical_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const WorldSet& final_theory(const PartitionSequence& ps) { return ps.classes.back(); }

bool is_partition_sequence(const PartitionSequence& ps, std::size_t world_count) {
  if (ps.classes.size() < 2) return false;
  WorldSet seen(world_count);
  for (const auto& c : ps.classes) {
    if (c.universe() != world_count || c.intersects(seen)) return false;
    seen |= c;
  }
  return seen == WorldSet(world_count, true);
}

}  // namespace nmr
