#include "nmr/equivalence.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "nmr/partition.hpp"

namespace nmr {

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::kPass: return "pass";
    case CheckStatus::kFail: return "fail";
    case CheckStatus::kSkipped: return "skipped";
  }
  return "?";
}

CheckItem check_default_equivalence(const DefaultTheory& theory, std::size_t max_defaults) {
  CheckItem item{"default extensions = default partition end states", CheckStatus::kPass, {}};
  if (!theory.all_normal()) {
    item.status = CheckStatus::kSkipped;
    item.detail = "theory has non-normal defaults";
    return item;
  }
  std::set<WorldSet> from_extensions;
  for (const auto& e : enumerate_extensions(theory, max_defaults)) from_extensions.insert(e.model_set);

  const auto sequences =
      enumerate_partition_sequences(theory.signature(), theory.facts(), default_rules_of(theory), max_defaults);
  std::set<WorldSet> from_partitions;
  for (const auto& ps : sequences) {
    if (!is_partition_sequence(ps, theory.signature().world_count())) {
      item.status = CheckStatus::kFail;
      item.detail = "a partition sequence is not a disjoint cover of the worlds";
      return item;
    }
    from_partitions.insert(final_theory(ps));
  }
  if (from_extensions != from_partitions) {
    item.status = CheckStatus::kFail;
    item.detail = std::to_string(from_extensions.size()) + " extension model sets vs " +
                  std::to_string(from_partitions.size()) + " distinct partition end states, sets differ";
    return item;
  }
  item.detail = std::to_string(from_extensions.size()) + " extension(s), " + std::to_string(sequences.size()) +
                " partition sequence(s)";
  return item;
}

CheckItem check_threshold_equivalence(const ThresholdCollection& c, const WorldModel& m, const ThresholdParams& p,
                                      const std::vector<Formula>& queries, std::size_t max_rules) {
  CheckItem item{"filtered sequences = threshold partition sequences", CheckStatus::kPass, {}};
  auto fail = [&](std::string why) {
    item.status = CheckStatus::kFail;
    item.detail = std::move(why);
    return item;
  };

  FilterOptions options;
  options.all_orders = true;
  options.max_thresholds = max_rules;
  const auto filtered = enumerate_filtered_sequences(c, m, p, options);

  const auto rules = threshold_rules_of(c, m, p);
  std::map<std::string, std::size_t> index_of;
  for (std::size_t i = 0; i < rules.size(); ++i) index_of.emplace(rules[i].name, i);
  const auto sequences = enumerate_partition_sequences(c.signature(), c.facts(), rules, max_rules);

  // Index sequence -> (step values, final class).
  std::map<std::vector<std::size_t>, std::pair<std::vector<Rational>, WorldSet>> from_partitions;
  for (const auto& ps : sequences) {
    if (!is_partition_sequence(ps, c.signature().world_count())) {
      return fail("a partition sequence is not a disjoint cover of the worlds");
    }
    std::vector<std::size_t> order;
    std::vector<Rational> values;
    for (const auto& a : ps.applications) {
      order.push_back(index_of.at(a.rule));
      if (!a.value) return fail("threshold rule '" + a.rule + "' applied without a measured proportion");
      values.push_back(*a.value);
    }
    if (!from_partitions.emplace(order, std::make_pair(values, final_theory(ps))).second) {
      return fail("two partition sequences share an application order");
    }
  }

  if (filtered.size() != from_partitions.size()) {
    return fail(std::to_string(filtered.size()) + " filtered sequences vs " + std::to_string(from_partitions.size()) +
                " partition sequences");
  }
  std::vector<Formula> probes = queries;
  probes.insert(probes.end(), c.thresholds().begin(), c.thresholds().end());
  for (const auto& seq : filtered) {
    const auto it = from_partitions.find(seq.accepted);
    if (it == from_partitions.end()) return fail("a filtered sequence has no matching partition sequence");
    const auto& [values, last] = it->second;
    if (values != seq.step_probabilities) return fail("step probabilities differ from partition proportions");
    for (const auto& psi : probes) {
      if (threshold_probability(c, m, seq, psi) != proportion(m, psi, last)) {
        return fail("threshold probability of '" + to_string(psi) + "' differs from its proportion in W_l");
      }
    }
  }
  item.detail = std::to_string(filtered.size()) + " sequence(s), " + std::to_string(probes.size()) +
                " probe formula(s)";
  return item;
}

}  // namespace nmr
