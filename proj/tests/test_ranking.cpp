#include <doctest.h>

#include <random>

#include "nmr/error.hpp"
#include "nmr/parser.hpp"
#include "nmr/ranking.hpp"
#include "nmr/semantics.hpp"
#include "nmr/theory_file.hpp"
#include "nmr/threshold.hpp"
#include "oracle.hpp"

using namespace nmr;

namespace {

DefaultTheory nixon() { return load_theory(NMR_FIXTURES "/nixon.theory").default_theory(); }

WorldModel penguin_weights(const Signature& sig) { return load_weights(NMR_FIXTURES "/penguin_weights.txt", sig); }

WorldModel random_model(std::mt19937& rng, const Signature& sig) {
  std::vector<WeightEntry> entries;
  for (WorldId w = 0; w < sig.world_count(); ++w) {
    Assignment a;
    for (std::size_t k = 0; k < sig.size(); ++k) a.emplace_back(sig.props()[k], world_value(w, k));
    entries.push_back({a, oracle::random_weight(rng, true)});
  }
  entries.back().weight += 1;
  return WorldModel::build(sig, entries);
}

DefaultTheory random_normal(std::mt19937& rng) {
  const auto props = oracle::prop_names(std::uniform_int_distribution<std::size_t>(1, 4)(rng));
  std::vector<Formula> facts;
  if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) facts.push_back(oracle::random_small(rng, props));
  std::vector<DefaultRule> rules;
  const int nd = std::uniform_int_distribution<int>(0, 4)(rng);
  for (int i = 0; i < nd; ++i) {
    Formula pre = std::uniform_int_distribution<int>(0, 1)(rng) == 0 ? Formula::top() : oracle::random_small(rng, props);
    Formula cons = oracle::random_small(rng, props);
    rules.push_back({"d" + std::to_string(i), pre, {cons}, cons});
  }
  return DefaultTheory(Signature(props), facts, rules);
}

// Consequents of the generating rules as a threshold collection over F.
ThresholdCollection as_thresholds(const DefaultTheory& t, const Extension& e) {
  std::vector<Formula> ts;
  for (const auto& name : e.generating) {
    const Formula& f = t.defaults()[t.rule_index(name)].consequent;
    if (std::find(ts.begin(), ts.end(), f) == ts.end()) ts.push_back(f);
  }
  return ThresholdCollection(t.signature(), ts, t.facts());
}

// Does the ordering pass every acceptance step at ε?
bool replays(const DefaultTheory& t, const WorldModel& m, const std::vector<std::string>& order, const Rational& eps) {
  WorldSet context = t.fact_models();
  for (const auto& name : order) {
    const WorldSet& cons = t.compiled(t.rule_index(name)).consequent;
    if (mass(m, context) == 0 || proportion(m, cons, context) < 1 - eps) return false;
    context &= cons;
  }
  return true;
}

class Constant : public GoodnessMeasure {
 public:
  RankedExtension measure(const DefaultTheory&, const WorldModel&, const Extension& e) const override {
    RankedExtension r;
    r.extension = e;
    r.eps_min = Rational(1, 3);
    return r;
  }
};

}  // namespace

TEST_CASE("diamond under the skewed weights") {
  const auto t = nixon();
  const auto ranked = rank_extensions(t, penguin_weights(t.signature()));
  REQUIRE(ranked.size() == 2);
  CHECK(ranked[0].extension.generating == std::vector<std::string>{"d2"});
  CHECK(*ranked[0].eps_min == Rational(1, 100));
  CHECK(ranked[0].rank == 1);
  CHECK(ranked[0].witness_order == std::vector<std::string>{"d2"});
  CHECK(ranked[0].witness_step_probs == std::vector<Rational>{Rational(99, 100)});
  CHECK(ranked[1].extension.generating == std::vector<std::string>{"d1"});
  CHECK(*ranked[1].eps_min == Rational(99, 100));
  CHECK(ranked[1].rank == 2);
}

TEST_CASE("diamond under uniform weights ties") {
  const auto t = nixon();
  const auto ranked = rank_extensions(t, WorldModel::uniform(t.signature()));
  REQUIRE(ranked.size() == 2);
  CHECK(*ranked[0].eps_min == Rational(1, 2));
  CHECK(*ranked[1].eps_min == Rational(1, 2));
  CHECK(ranked[0].rank == 1);
  CHECK(ranked[1].rank == 1);
  CHECK(ranked[0].extension.model_set < ranked[1].extension.model_set);
}

TEST_CASE("an extension with no generating defaults scores zero") {
  const auto t = parse_theory("prop a\nfact a").default_theory();
  const auto ranked = rank_extensions(t, WorldModel::uniform(t.signature()));
  REQUIRE(ranked.size() == 1);
  CHECK(*ranked[0].eps_min == 0);
  CHECK(ranked[0].witness_order.empty());
}

TEST_CASE("the minimum is taken over orderings") {
  const auto t = parse_theory("prop p, q\ndefault d1: true :: p / p\ndefault d2: true :: q / q").default_theory();
  const auto m = parse_weights("weight p=1 q=1 : 4\nweight p=1 q=0 : 1\nweight p=0 q=1 : 3\nweight p=0 q=0 : 0\n",
                               t.signature());
  const auto exts = enumerate_extensions(t);
  REQUIRE(exts.size() == 1);
  // d1 then d2: max(3/8, 1/5). d2 then d1: max(1/8, 3/7).
  CHECK(generating_orderings(t, exts[0]).size() == 2);
  const auto r = epsilon_min(t, m, exts[0]);
  CHECK(*r.eps_min == Rational(3, 8));
  CHECK(r.witness_order == std::vector<std::string>{"d1", "d2"});
  CHECK(r.witness_step_probs == std::vector<Rational>{Rational(5, 8), Rational(4, 5)});
  CHECK(replays(t, m, {"d1", "d2"}, Rational(3, 8)));
  CHECK_FALSE(replays(t, m, {"d2", "d1"}, Rational(3, 8)));
}

TEST_CASE("only grounded orderings count") {
  const auto t = parse_theory("prop b, c\ndefault d1: true :: b / b\ndefault d2: b :: c / c").default_theory();
  const auto m = parse_weights("weight b=1 c=1 : 10\nweight b=1 c=0 : 0\nweight b=0 c=1 : 1\nweight b=0 c=0 : 10\n",
                               t.signature());
  const auto exts = enumerate_extensions(t);
  REQUIRE(exts.size() == 1);
  CHECK(generating_orderings(t, exts[0]) == std::vector<std::vector<std::string>>{{"d1", "d2"}});
  const auto r = epsilon_min(t, m, exts[0]);
  CHECK(*r.eps_min == Rational(11, 21));
  CHECK(*oracle::eps_min(t, exts[0].generating, m.weights()) == Rational(11, 21));
  // The ungrounded order would already pass at 10/21.
  CHECK(replays(t, m, {"d2", "d1"}, Rational(10, 21)));
}

TEST_CASE("orderings that need epsilon = 1 are dropped") {
  const auto t = parse_theory("prop a\ndefault d: true :: a / a").default_theory();
  const auto m = parse_weights("weight a=1 : 0\nweight a=0 : 1\n", t.signature());
  const auto ranked = rank_extensions(t, m);
  REQUIRE(ranked.size() == 1);
  CHECK_FALSE(ranked[0].rankable());
  CHECK(ranked[0].rank == 0);
}

TEST_CASE("refusals") {
  const auto penguin = load_theory(NMR_FIXTURES "/penguin_seminormal.theory").default_theory();
  CHECK_THROWS_AS(rank_extensions(penguin, WorldModel::uniform(penguin.signature())), SemanticError);

  const auto t = parse_theory("prop a\nfact a\ndefault d: a :: a / a").default_theory();
  const auto m = parse_weights("weight a=1 : 0\nweight a=0 : 1\n", t.signature());
  CHECK_THROWS_AS(rank_extensions(t, m), ZeroMassError);

  std::string text = "prop p0, p1, p2, p3, p4, p5, p6, p7, p8\n";
  for (int i = 0; i < 9; ++i) text += "default d" + std::to_string(i) + ": true :: p" + std::to_string(i) + " / p" + std::to_string(i) + "\n";
  const auto wide = parse_theory(text).default_theory();
  const auto exts = enumerate_extensions(wide);
  REQUIRE(exts.size() == 1);
  CHECK_THROWS_AS(epsilon_min(wide, WorldModel::uniform(wide.signature()), exts[0]), CapExceeded);
}

TEST_CASE("custom goodness measures plug in") {
  const auto t = nixon();
  const auto ranked = rank_extensions(t, WorldModel::uniform(t.signature()), Constant{});
  REQUIRE(ranked.size() == 2);
  CHECK(ranked[0].rank == 1);
  CHECK(ranked[1].rank == 1);
}

TEST_CASE("random normal theories: oracle agreement, replay soundness and ranks") {
  std::mt19937 rng(8675309);
  int ranked_count = 0;
  for (int i = 0; i < 200; ++i) {
    const auto t = random_normal(rng);
    const auto m = random_model(rng, t.signature());
    if (mass(m, t.fact_models()) == 0) {
      CHECK_THROWS_AS(rank_extensions(t, m), ZeroMassError);
      continue;
    }
    const auto ranked = rank_extensions(t, m);
    for (std::size_t k = 0; k < ranked.size(); ++k) {
      const auto& r = ranked[k];
      const auto expected = oracle::eps_min(t, r.extension.generating, m.weights());
      CHECK(r.eps_min == expected);
      if (!r.rankable()) {
        CHECK(r.rank == 0);
        continue;
      }
      ++ranked_count;
      CHECK(*r.eps_min >= 0);
      CHECK(*r.eps_min < 1);
      CHECK(replays(t, m, r.witness_order, *r.eps_min));
      if (k > 0 && ranked[k - 1].rankable()) {
        CHECK(*ranked[k - 1].eps_min <= *r.eps_min);
        CHECK(r.rank == (*ranked[k - 1].eps_min == *r.eps_min ? ranked[k - 1].rank : k + 1));
      } else {
        CHECK(r.rank == k + 1);
      }

      const auto c = as_thresholds(t, r.extension);
      const auto seqs = enumerate_filtered_sequences(c, m, ThresholdParams(*r.eps_min), {.all_orders = true});
      const bool full = std::any_of(seqs.begin(), seqs.end(), [&](const FilteredSequence& s) {
        return s.accepted.size() == c.thresholds().size();
      });
      CHECK(full);

      if (*r.eps_min > 0) {
        for (const Rational& delta : {Rational(1), Rational(1, 2), Rational(1, 1000)}) {
          const Rational lower = *r.eps_min * (1 - delta);
          for (const auto& order : generating_orderings(t, r.extension)) {
            CHECK_FALSE(replays(t, m, order, lower));
          }
        }
      }
    }
  }
  CHECK(ranked_count > 150);
}

TEST_CASE("weight scaling leaves the ranking unchanged") {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto t = random_normal(rng);
    const auto m = random_model(rng, t.signature());
    if (mass(m, t.fact_models()) == 0) continue;
    const auto base = rank_extensions(t, m);
    for (const Rational& k : {Rational(2), Rational(1, 3), Rational(1000000)}) {
      const auto scaled = rank_extensions(t, m.scaled(k));
      REQUIRE(scaled.size() == base.size());
      for (std::size_t j = 0; j < base.size(); ++j) {
        CHECK(scaled[j].extension == base[j].extension);
        CHECK(scaled[j].eps_min == base[j].eps_min);
        CHECK(scaled[j].rank == base[j].rank);
        CHECK(scaled[j].witness_order == base[j].witness_order);
        CHECK(scaled[j].witness_step_probs == base[j].witness_step_probs);
      }
    }
  }
}
