// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "nmr/cli.hpp"
#include "nmr/parser.hpp"
#include "nmr/partition.hpp"
#include "nmr/ranking.hpp"
#include "nmr/semantics.hpp"
#include "nmr/theory_file.hpp"
#include "nmr/threshold.hpp"
#include "oracle.hpp"

using namespace nmr;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::string note;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fixture(const char* name) { return std::string(NMR_FIXTURES) + "/" + name; }

WorldSet from_ids(const Signature& sig, const std::vector<std::uint32_t>& ids) {
  return WorldSet::of(sig.world_count(), std::vector<WorldId>(ids.begin(), ids.end()));
}

WorldModel random_model(std::mt19937& rng, const Signature& sig, bool allow_zero) {
  std::vector<WeightEntry> entries;
  for (WorldId w = 0; w < sig.world_count(); ++w) {
    Assignment a;
    for (std::size_t k = 0; k < sig.size(); ++k) a.emplace_back(sig.props()[k], world_value(w, k));
    entries.push_back({a, oracle::random_weight(rng, allow_zero)});
  }
  entries.front().weight += 1;
  return WorldModel::build(sig, entries);
}

DefaultTheory random_normal(std::mt19937& rng, const std::vector<std::string>& props) {
  std::vector<Formula> facts;
  const int nf = std::uniform_int_distribution<int>(0, 2)(rng);
  for (int i = 0; i < nf; ++i) facts.push_back(oracle::random_small(rng, props));
  std::vector<DefaultRule> rules;
  const int nd = std::uniform_int_distribution<int>(0, 4)(rng);
  for (int i = 0; i < nd; ++i) {
    Formula pre = std::uniform_int_distribution<int>(0, 2)(rng) == 0 ? Formula::top() : oracle::random_small(rng, props);
    Formula cons = oracle::random_small(rng, props);
    rules.push_back({"d" + std::to_string(i), pre, {cons}, cons});
  }
  return DefaultTheory(Signature(props), facts, rules);
}

ThresholdCollection random_collection(std::mt19937& rng, const std::vector<std::string>& props) {
  std::vector<Formula> facts;
  if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) facts.push_back(oracle::random_small(rng, props));
  std::vector<Formula> ts;
  const int n = std::uniform_int_distribution<int>(1, 4)(rng);
  for (int i = 0; i < n; ++i) {
    Formula f = oracle::random_small(rng, props);
    if (std::find(ts.begin(), ts.end(), f) == ts.end()) ts.push_back(f);
  }
  return ThresholdCollection(Signature(props), ts, facts);
}

std::vector<std::string> random_props(std::mt19937& rng, std::size_t max) {
  return oracle::prop_names(std::uniform_int_distribution<std::size_t>(1, max)(rng));
}

const std::vector<Rational> kEpsilons = {Rational(1, 10), Rational(1, 4), Rational(1, 2), Rational(3, 4)};
const std::vector<Rational> kScales = {Rational(2), Rational(1, 3), Rational(1000000)};

// ---- criteria

Outcome nixon_extensions() {
  Outcome o;
  const auto start = Clock::now();
  const auto t = load_theory(fixture("nixon.theory")).default_theory();
  const auto exts = enumerate_extensions(t);
  std::ostringstream out, err;
  const int code = cli::run({"extensions", fixture("nixon.theory")}, out, err);
  const double took = seconds_since(start);

  const auto& props = t.signature().props();
  const std::set<std::vector<std::uint32_t>> want = {
      oracle::models({parse_formula("a & a' & b")}, props),
      oracle::models({parse_formula("a & a' & !b")}, props)};
  std::set<std::vector<std::uint32_t>> got;
  for (const auto& e : exts) got.insert(e.model_set.ids());
  o.expect(exts.size() == 2, "expected 2 extensions, got " + std::to_string(exts.size()));
  o.expect(got == want, "extension model sets differ");
  o.expect(code == 0, "command-line run failed");
  o.expect(took < 1.0, "took " + std::to_string(took) + "s");
  if (o.ok) o.note = "2 extensions {a a' b}, {a a' !b} in " + std::to_string(took) + "s";
  return o;
}

Outcome diamond_partitions() {
  Outcome o;
  const auto t = load_theory(fixture("nixon.theory")).default_theory();
  const auto& sig = t.signature();
  auto world = [&](bool a, bool a2, bool b) { return world_of(sig, {{"a", a}, {"a'", a2}, {"b", b}}); };
  const WorldSet wa = WorldSet::of(sig.world_count(), {world(false, false, false), world(false, false, true),
                                                       world(false, true, false), world(false, true, true),
                                                       world(true, false, false), world(true, false, true)});
  const WorldSet wb = WorldSet::of(sig.world_count(), {world(true, true, false)});
  const WorldSet wc = WorldSet::of(sig.world_count(), {world(true, true, true)});
  const auto seqs = enumerate_partition_sequences(sig, t.facts(), default_rules_of(t));
  std::set<std::vector<WorldSet>> got;
  for (const auto& ps : seqs) got.insert(ps.classes);
  const std::set<std::vector<WorldSet>> want = {{wa, wb, wc}, {wa, wc, wb}};
  o.expect(seqs.size() == 2, "expected 2 sequences, got " + std::to_string(seqs.size()));
  o.expect(got == want, "class membership differs");
  o.expect(wa.count() == 6, "W_a is not six worlds");
  if (o.ok) o.note = "S1 = <W_a, W_b, W_c>, S2 = <W_a, W_c, W_b>, |W_a| = 6";
  return o;
}

Outcome epsilon_ranking() {
  Outcome o;
  const auto t = load_theory(fixture("nixon.theory")).default_theory();
  const auto& sig = t.signature();
  const auto skew = load_weights(fixture("penguin_weights.txt"), sig);

  // Independent reading: the weighted share of the losing class in W_b ∪ W_c.
  const auto& props = sig.props();
  const auto share_b = *oracle::probability(parse_formula("!b"), {parse_formula("a"), parse_formula("a'")}, props,
                                            skew.weights());
  const auto share_c = *oracle::probability(parse_formula("b"), {parse_formula("a"), parse_formula("a'")}, props,
                                            skew.weights());

  const auto ranked = rank_extensions(t, skew);
  o.expect(ranked.size() == 2, "expected 2 ranked extensions");
  if (!o.ok) return o;
  const auto& first = ranked[0];
  const auto& second = ranked[1];
  o.expect(first.extension.generating == std::vector<std::string>{"d2"}, "the !b extension does not rank first");
  o.expect(first.eps_min == Rational(1, 100), "eps_min for !b is not 1/100");
  o.expect(second.eps_min == Rational(99, 100), "eps_min for b is not 99/100");
  o.expect(first.eps_min == share_c && second.eps_min == share_b, "eps_min differs from the class shares");
  o.expect(first.rank == 1 && second.rank == 2, "ranks are not 1, 2");

  const auto uniform = rank_extensions(t, WorldModel::uniform(sig));
  o.expect(uniform.size() == 2 && uniform[0].eps_min == Rational(1, 2) && uniform[1].eps_min == Rational(1, 2),
           "uniform eps_min is not 1/2 for both");
  o.expect(uniform.size() == 2 && uniform[0].rank == 1 && uniform[1].rank == 1, "uniform extensions do not tie");
  if (o.ok) o.note = "!b: 1/100 (rank 1), b: 99/100 (rank 2); uniform 1/2 tie";
  return o;
}

Outcome default_equivalence_suite() {
  Outcome o;
  std::mt19937 rng(20240601);
  const auto start = Clock::now();
  int n = 0;
  for (; n < 250; ++n) {
    const auto t = random_normal(rng, random_props(rng, 4));
    std::set<WorldSet> from_extensions;
    for (const auto& e : enumerate_extensions(t)) from_extensions.insert(e.model_set);
    std::set<WorldSet> from_oracle;
    for (const auto& ids : oracle::extension_models(t)) from_oracle.insert(from_ids(t.signature(), ids));
    std::set<WorldSet> from_partitions;
    for (const auto& ps : enumerate_partition_sequences(t.signature(), t.facts(), default_rules_of(t))) {
      from_partitions.insert(final_theory(ps));
    }
    o.expect(from_extensions == from_partitions, "instance " + std::to_string(n) + ": families differ");
    o.expect(from_extensions == from_oracle, "instance " + std::to_string(n) + ": oracle disagrees");
  }
  const double took = seconds_since(start);
  o.expect(took < 60.0, "took " + std::to_string(took) + "s");
  if (o.ok) o.note = std::to_string(n) + " normal theories in " + std::to_string(took) + "s";
  return o;
}

Outcome threshold_equivalence_suite() {
  Outcome o;
  std::mt19937 rng(20240602);
  const auto start = Clock::now();
  int n = 0;
  int runs = 0;
  for (; n < 250; ++n) {
    const auto props = random_props(rng, 3);
    const auto c = random_collection(rng, props);
    const auto m = random_model(rng, c.signature(), true);
    if (mass(m, c.fact_models()) == 0) {
      --n;
      continue;
    }
    std::vector<Formula> probes = c.thresholds();
    probes.push_back(oracle::random_small(rng, props));
    for (const auto& eps : kEpsilons) {
      const ThresholdParams p(eps);
      const auto filtered = enumerate_filtered_sequences(c, m, p, {.all_orders = true});
      const auto rules = threshold_rules_of(c, m, p);
      std::map<std::string, std::size_t> index_of;
      for (std::size_t i = 0; i < rules.size(); ++i) index_of[rules[i].name] = i;

      std::map<std::vector<std::size_t>, WorldSet> from_partitions;
      for (const auto& ps : enumerate_partition_sequences(c.signature(), c.facts(), rules)) {
        std::vector<std::size_t> order;
        for (const auto& a : ps.applications) order.push_back(index_of.at(a.rule));
        from_partitions.emplace(order, final_theory(ps));
      }
      std::set<std::vector<std::size_t>> filtered_set;
      for (const auto& s : filtered) filtered_set.insert(s.accepted);
      std::set<std::vector<std::size_t>> partition_set;
      for (const auto& [order, last] : from_partitions) partition_set.insert(order);
      const auto brute = oracle::filtered_sequences(c.thresholds(), c.facts(), props, m.weights(), eps);
      const std::string where = "instance " + std::to_string(n) + " eps " + to_string(eps);
      o.expect(filtered_set == partition_set, where + ": sequence sets differ");
      o.expect(filtered_set == std::set<std::vector<std::size_t>>(brute.begin(), brute.end()),
               where + ": oracle disagrees");

      for (const auto& s : filtered) {
        const auto it = from_partitions.find(s.accepted);
        if (it == from_partitions.end()) continue;
        std::vector<Formula> given = c.facts();
        for (std::size_t i : s.accepted) given.push_back(c.thresholds()[i]);
        for (const auto& psi : probes) {
          const Rational pr = threshold_probability(c, m, s, psi);
          o.expect(pr == proportion(m, psi, it->second), where + ": Pr_Phi differs from W_l proportion");
          o.expect(pr == *oracle::probability(psi, given, props, m.weights()), where + ": oracle probability differs");
        }
      }
      ++runs;
    }
  }
  const double took = seconds_since(start);
  o.expect(took < 60.0, "took " + std::to_string(took) + "s");
  if (o.ok) o.note = std::to_string(n) + " collections x 4 epsilons (" + std::to_string(runs) + " runs) in " +
                     std::to_string(took) + "s";
  return o;
}

Outcome seminormal_penguin() {
  Outcome o;
  const auto t = load_theory(fixture("penguin_seminormal.theory")).default_theory();
  const auto exts = enumerate_extensions(t);
  o.expect(exts.size() == 1, "expected 1 extension, got " + std::to_string(exts.size()));
  if (!o.ok) return o;
  std::vector<Formula> theory = t.facts();
  for (const auto& name : exts[0].generating) theory.push_back(t.defaults()[t.rule_index(name)].consequent);
  o.expect(oracle::entails(theory, parse_formula("!fly"), t.signature().props()), "extension does not entail !fly");
  o.expect(entails(theory, parse_formula("!fly"), t.signature()), "engine entailment disagrees");
  if (o.ok) o.note = "one extension, generated by penguins_dont, entails !fly";
  return o;
}

Outcome no_extension() {
  Outcome o;
  const auto t = load_theory(fixture("no_extension.theory")).default_theory();
  const auto exts = enumerate_extensions(t);
  o.expect(exts.empty(), "expected 0 extensions, got " + std::to_string(exts.size()));
  o.expect(oracle::extension_models(t).empty(), "oracle found an extension");
  if (o.ok) o.note = "true : a / !a has 0 extensions";
  return o;
}

Outcome oracle_agreement() {
  Outcome o;
  std::mt19937 rng(20240603);
  int n = 0;
  for (; n < 600; ++n) {
    const auto props = random_props(rng, 5);
    const Signature sig(props);
    const Formula f = oracle::random_formula(rng, props, 4);
    std::vector<Formula> premises;
    const int np = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int i = 0; i < np; ++i) premises.push_back(oracle::random_formula(rng, props, 2));
    o.expect(models_of(f, sig).ids() == oracle::models({f}, props), "model sets differ for " + to_string(f));
    o.expect(entails(premises, f, sig) == oracle::entails(premises, f, props), "entailment differs for " + to_string(f));
    o.expect(parse_formula(to_string(f)) == f, "printer round trip fails for " + to_string(f));
  }
  if (o.ok) o.note = std::to_string(n) + " formulas over <= 5 propositions";
  return o;
}

// Maps world ids of `from` onto `to` through a renaming of proposition names.
WorldSet carry(const WorldSet& s, const Signature& from, const Signature& to,
               const std::map<std::string, std::string>& names) {
  WorldSet out(to.world_count());
  s.for_each([&](WorldId w) {
    WorldId v = 0;
    for (std::size_t k = 0; k < from.size(); ++k) {
      if (world_value(w, k)) v |= WorldId{1} << *to.index_of(names.at(from.props()[k]));
    }
    out.insert(v);
  });
  return out;
}

Outcome invariance_suite() {
  Outcome o;
  std::mt19937 rng(20240604);
  int n = 0;
  for (; n < 100; ++n) {
    const auto props = random_props(rng, 4);
    const auto t = random_normal(rng, props);
    const auto m = random_model(rng, t.signature(), false);
    if (mass(m, t.fact_models()) == 0) continue;
    const auto c = ThresholdCollection(t.signature(), [&] {
      std::vector<Formula> ts;
      for (const auto& d : t.defaults()) {
        if (std::find(ts.begin(), ts.end(), d.consequent) == ts.end()) ts.push_back(d.consequent);
      }
      return ts;
    }(), t.facts());
    const auto ranked = rank_extensions(t, m);
    std::vector<std::vector<FilteredSequence>> seqs;
    for (const auto& eps : kEpsilons) seqs.push_back(enumerate_filtered_sequences(c, m, ThresholdParams(eps), {.all_orders = true}));

    for (const auto& k : kScales) {
      const auto mk = m.scaled(k);
      const auto rk = rank_extensions(t, mk);
      bool same = rk.size() == ranked.size();
      for (std::size_t i = 0; same && i < rk.size(); ++i) {
        same = rk[i].extension == ranked[i].extension && rk[i].eps_min == ranked[i].eps_min &&
               rk[i].rank == ranked[i].rank && rk[i].witness_order == ranked[i].witness_order &&
               rk[i].witness_step_probs == ranked[i].witness_step_probs;
      }
      o.expect(same, "ranking changes under scaling by " + to_string(k));
      for (std::size_t e = 0; e < kEpsilons.size(); ++e) {
        o.expect(enumerate_filtered_sequences(c, mk, ThresholdParams(kEpsilons[e]), {.all_orders = true}) == seqs[e],
                 "filtered sequences change under scaling by " + to_string(k));
      }
    }

    // Rename to fresh names and reverse the signature order.
    std::map<std::string, std::string> names;
    std::vector<std::string> renamed_props;
    for (const auto& p : props) names[p] = "x_" + p;
    for (auto it = props.rbegin(); it != props.rend(); ++it) renamed_props.push_back(names[*it]);
    const Signature rsig(renamed_props);
    std::vector<Formula> rfacts;
    for (const auto& f : t.facts()) rfacts.push_back(oracle::rename(f, names));
    std::vector<DefaultRule> rrules;
    for (const auto& d : t.defaults()) {
      Formula cons = oracle::rename(d.consequent, names);
      rrules.push_back({d.name, oracle::rename(d.prerequisite, names), {cons}, cons});
    }
    const DefaultTheory rt(rsig, rfacts, rrules);
    std::vector<Rational> rweights(rsig.world_count());
    for (WorldId w = 0; w < t.signature().world_count(); ++w) {
      rweights[carry(WorldSet::of(t.signature().world_count(), {w}), t.signature(), rsig, names).ids().front()] =
          m.weight(w);
    }
    std::vector<WeightEntry> entries;
    for (WorldId w = 0; w < rsig.world_count(); ++w) {
      Assignment a;
      for (std::size_t k = 0; k < rsig.size(); ++k) a.emplace_back(rsig.props()[k], world_value(w, k));
      entries.push_back({a, rweights[w]});
    }
    const auto rm = WorldModel::build(rsig, entries);

    std::map<std::vector<std::string>, std::pair<WorldSet, std::optional<Rational>>> base, moved;
    for (const auto& r : ranked) base[r.extension.generating] = {carry(r.extension.model_set, t.signature(), rsig, names), r.eps_min};
    for (const auto& r : rank_extensions(rt, rm)) moved[r.extension.generating] = {r.extension.model_set, r.eps_min};
    o.expect(base == moved, "renaming changes extensions or eps_min");

    std::set<std::vector<WorldSet>> parts, rparts;
    for (const auto& ps : enumerate_partition_sequences(t.signature(), t.facts(), default_rules_of(t))) {
      std::vector<WorldSet> cls;
      for (const auto& w : ps.classes) cls.push_back(carry(w, t.signature(), rsig, names));
      parts.insert(cls);
    }
    for (const auto& ps : enumerate_partition_sequences(rsig, rfacts, default_rules_of(rt))) rparts.insert(ps.classes);
    o.expect(parts == rparts, "renaming changes partition sequences");
  }
  if (o.ok) o.note = std::to_string(n) + " instances; scales 2, 1/3, 10^6; renamed and reordered signatures";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Nixon diamond has exactly two extensions", nixon_extensions},
      {"diamond partition sequences are bit-exact", diamond_partitions},
      {"exact eps_min values and ranking", epsilon_ranking},
      {"extensions = default partition end states (random normal theories)", default_equivalence_suite},
      {"filtered sequences = threshold partitions (random collections)", threshold_equivalence_suite},
      {"semi-normal penguin theory", seminormal_penguin},
      {"theory without extensions", no_extension},
      {"entailment agrees with the truth-table oracle", oracle_agreement},
      {"weight scaling and renaming invariance", invariance_suite},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.note = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %zu: %s -- %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.note.c_str());
    if (!o.ok) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
