#include "nmr/report.hpp"

#include <algorithm>
#include <sstream>

#include "nmr/error.hpp"
#include "nmr/parser.hpp"

namespace nmr::report {
namespace {

json ids_json(const WorldSet& s) { return s.ids(); }

json assignments_json(const Signature& sig, const WorldSet& s) {
  json out = json::array();
  s.for_each([&](WorldId id) { out.push_back(describe_world(sig, id)); });
  return out;
}

json rationals_json(const std::vector<Rational>& rs) {
  json out = json::array();
  for (const auto& r : rs) out.push_back(to_string(r));
  return out;
}

json optional_rational_json(const std::optional<Rational>& r) { return r ? json(to_string(*r)) : json(nullptr); }

Signature signature_from(const json& j) { return Signature(j.at("props").get<std::vector<std::string>>(), kHardPropLimit); }

WorldSet worlds_from(const json& j, const Signature& sig) {
  WorldSet out = WorldSet::none(sig);
  for (const auto& id : j) {
    const auto w = id.get<WorldId>();
    if (w >= sig.world_count()) throw ParseError("world id " + std::to_string(w) + " out of range", 1, 1);
    out.insert(w);
  }
  return out;
}

Rational rational_from(const json& j) { return parse_rational(j.get<std::string>()); }

std::vector<Rational> rationals_from(const json& j) {
  std::vector<Rational> out;
  for (const auto& r : j) out.push_back(rational_from(r));
  return out;
}

std::optional<Rational> optional_rational_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return rational_from(j);
}

std::vector<Formula> formulas_from(const json& j, const Signature& sig) {
  std::vector<Formula> out;
  for (const auto& f : j) out.push_back(parse_formula(f.get<std::string>(), &sig));
  return out;
}

json formulas_json(const std::vector<Formula>& fs) {
  json out = json::array();
  for (const auto& f : fs) out.push_back(to_string(f));
  return out;
}

template <typename Fn>
auto guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what(), 1, 1);
  } catch (const SemanticError& e) {
    throw ParseError(std::string("malformed report: ") + e.what(), 1, 1);
  }
}

void expect_command(const json& j, const char* command) {
  if (j.at("command").get<std::string>() != command) {
    throw ParseError(std::string("expected a '") + command + "' report", 1, 1);
  }
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i != 0) out += sep;
    out += parts[i];
  }
  return out;
}

bool tied(const std::vector<RankedExtension>& ranking, std::size_t i) {
  if (!ranking[i].rankable()) return false;
  return std::any_of(ranking.begin(), ranking.end(), [&](const RankedExtension& other) {
    return &other != &ranking[i] && other.rankable() && other.rank == ranking[i].rank;
  });
}

}  // namespace

std::string describe_worlds(const Signature& sig, const WorldSet& worlds) {
  if (worlds.empty()) return "(none)";
  std::string out;
  worlds.for_each([&](WorldId id) {
    if (!out.empty()) out += ' ';
    out += "{" + describe_world(sig, id) + "}";
  });
  return out;
}

bool Check::passed() const {
  return std::none_of(items.begin(), items.end(), [](const CheckItem& i) { return i.status == CheckStatus::kFail; });
}

// ---- extensions

json to_json(const Extensions& r) {
  json list = json::array();
  for (const auto& e : r.extensions) {
    list.push_back({{"generating", e.generating},
                    {"worlds", ids_json(e.model_set)},
                    {"assignments", assignments_json(r.signature, e.model_set)},
                    {"inconsistent", e.inconsistent}});
  }
  return {{"command", "extensions"}, {"props", r.signature.props()}, {"count", r.extensions.size()},
          {"extensions", list}};
}

Extensions extensions_from_json(const json& j) {
  return guarded([&] {
    expect_command(j, "extensions");
    Extensions r{signature_from(j), {}};
    for (const auto& e : j.at("extensions")) {
      r.extensions.push_back({e.at("generating").get<std::vector<std::string>>(), worlds_from(e.at("worlds"), r.signature),
                              e.at("inconsistent").get<bool>()});
    }
    return r;
  });
}

std::string to_text(const Extensions& r) {
  std::ostringstream os;
  os << r.extensions.size() << (r.extensions.size() == 1 ? " extension\n" : " extensions\n");
  for (std::size_t i = 0; i < r.extensions.size(); ++i) {
    const auto& e = r.extensions[i];
    os << "extension " << i + 1 << (e.inconsistent ? " (inconsistent)" : "") << ": generating {"
       << join(e.generating, ", ") << "}\n";
    os << "  models: " << describe_worlds(r.signature, e.model_set) << "\n";
  }
  return os.str();
}

// ---- threshold

json to_json(const ThresholdRun& r) {
  json list = json::array();
  for (const auto& entry : r.sequences) {
    json formulas = json::array();
    for (std::size_t i : entry.sequence.accepted) formulas.push_back(to_string(r.thresholds[i]));
    json queries = json::array();
    for (std::size_t q = 0; q < r.queries.size(); ++q) {
      queries.push_back({{"formula", to_string(r.queries[q])}, {"probability", to_string(entry.query_probabilities[q])}});
    }
    list.push_back({{"formulas", formulas},
                    {"indices", entry.sequence.accepted},
                    {"step_probabilities", rationals_json(entry.sequence.step_probabilities)},
                    {"context", ids_json(entry.context)},
                    {"queries", queries}});
  }
  return {{"command", "threshold"},
          {"props", r.signature.props()},
          {"epsilon", to_string(r.epsilon)},
          {"all_orders", r.all_orders},
          {"thresholds", formulas_json(r.thresholds)},
          {"query_formulas", formulas_json(r.queries)},
          {"sequences", list}};
}

ThresholdRun threshold_from_json(const json& j) {
  return guarded([&] {
    expect_command(j, "threshold");
    ThresholdRun r{signature_from(j), rational_from(j.at("epsilon")), j.at("all_orders").get<bool>(), {}, {}, {}};
    r.thresholds = formulas_from(j.at("thresholds"), r.signature);
    r.queries = formulas_from(j.at("query_formulas"), r.signature);
    for (const auto& s : j.at("sequences")) {
      ThresholdRun::Entry entry;
      entry.sequence.accepted = s.at("indices").get<std::vector<std::size_t>>();
      entry.sequence.step_probabilities = rationals_from(s.at("step_probabilities"));
      entry.context = worlds_from(s.at("context"), r.signature);
      for (const auto& q : s.at("queries")) entry.query_probabilities.push_back(rational_from(q.at("probability")));
      r.sequences.push_back(std::move(entry));
    }
    return r;
  });
}

std::string to_text(const ThresholdRun& r) {
  std::ostringstream os;
  os << "epsilon " << to_string(r.epsilon) << " (accept at probability >= " << to_string(Rational(1 - r.epsilon))
     << ")\n";
  os << r.sequences.size() << (r.sequences.size() == 1 ? " filtered sequence" : " filtered sequences")
     << (r.all_orders ? " (all orders)\n" : "\n");
  for (std::size_t s = 0; s < r.sequences.size(); ++s) {
    const auto& entry = r.sequences[s];
    std::vector<std::string> names;
    for (std::size_t i : entry.sequence.accepted) names.push_back(to_string(r.thresholds[i]));
    os << "sequence " << s + 1 << ": <" << join(names, ", ") << ">\n";
    for (std::size_t k = 0; k < names.size(); ++k) {
      os << "  step " << k + 1 << ": " << names[k] << "  Pr = " << to_string(entry.sequence.step_probabilities[k])
         << "\n";
    }
    os << "  context: " << describe_worlds(r.signature, entry.context) << "\n";
    for (std::size_t q = 0; q < r.queries.size(); ++q) {
      os << "  Pr_seq(" << to_string(r.queries[q]) << ") = " << to_string(entry.query_probabilities[q]) << "\n";
    }
  }
  return os.str();
}

// ---- partitions

json to_json(const Partitions& r) {
  json list = json::array();
  for (const auto& ps : r.sequences) {
    json classes = json::array();
    for (std::size_t i = 0; i < ps.classes.size(); ++i) {
      json rule = nullptr;
      for (const auto& a : ps.applications) {
        if (a.class_index == i) rule = a.rule;
      }
      classes.push_back({{"index", i},
                         {"worlds", ids_json(ps.classes[i])},
                         {"assignments", assignments_json(r.signature, ps.classes[i])},
                         {"rule", rule}});
    }
    json applications = json::array();
    for (const auto& a : ps.applications) {
      applications.push_back({{"rule", a.rule},
                              {"class", a.class_index ? json(*a.class_index) : json(nullptr)},
                              {"value", optional_rational_json(a.value)}});
    }
    list.push_back({{"classes", classes}, {"applications", applications}, {"final", ids_json(final_theory(ps))}});
  }
  json rules = json::array();
  for (const auto& rule : r.rules) rules.push_back({{"rule", rule.name}, {"cond", rule.cond}, {"res", rule.res}});
  return {{"command", "partitions"},
          {"mode", r.mode},
          {"props", r.signature.props()},
          {"epsilon", optional_rational_json(r.epsilon)},
          {"rules", rules},
          {"sequences", list}};
}

Partitions partitions_from_json(const json& j) {
  return guarded([&] {
    expect_command(j, "partitions");
    Partitions r{signature_from(j), j.at("mode").get<std::string>(), optional_rational_from(j.at("epsilon")), {}, {}};
    for (const auto& c : j.at("rules")) {
      r.rules.push_back({c.at("rule").get<std::string>(), c.at("cond").get<std::string>(), c.at("res").get<std::string>()});
    }
    for (const auto& s : j.at("sequences")) {
      PartitionSequence ps;
      for (const auto& c : s.at("classes")) ps.classes.push_back(worlds_from(c.at("worlds"), r.signature));
      for (const auto& a : s.at("applications")) {
        Application app{a.at("rule").get<std::string>(), std::nullopt, optional_rational_from(a.at("value"))};
        if (!a.at("class").is_null()) app.class_index = a.at("class").get<std::size_t>();
        ps.applications.push_back(std::move(app));
      }
      r.sequences.push_back(std::move(ps));
    }
    return r;
  });
}

std::string to_text(const Partitions& r) {
  std::ostringstream os;
  os << "mode " << r.mode;
  if (r.epsilon) os << ", epsilon " << to_string(*r.epsilon);
  os << "\n";
  for (const auto& rule : r.rules) os << "rule " << rule.name << ": <" << rule.cond << "; " << rule.res << ">\n";
  os << r.sequences.size() << (r.sequences.size() == 1 ? " partition sequence\n" : " partition sequences\n");
  for (std::size_t s = 0; s < r.sequences.size(); ++s) {
    const auto& ps = r.sequences[s];
    os << "sequence " << s + 1 << ":\n";
    os << "  W_0 (background false): " << describe_worlds(r.signature, ps.classes.front()) << "\n";
    for (const auto& a : ps.applications) {
      const std::string value = a.value ? "  % = " + to_string(*a.value) : "";
      if (a.vacuous()) {
        os << "  " << a.rule << " applied vacuously" << value << "\n";
      } else {
        os << "  W_" << *a.class_index << " by " << a.rule << value << ": "
           << describe_worlds(r.signature, ps.classes[*a.class_index]) << "\n";
      }
    }
    os << "  W_" << ps.classes.size() - 1 << " (final): " << describe_worlds(r.signature, ps.classes.back()) << "\n";
  }
  return os.str();
}

// ---- ranking

json to_json(const Ranking& r) {
  json list = json::array();
  for (std::size_t i = 0; i < r.ranking.size(); ++i) {
    const auto& e = r.ranking[i];
    list.push_back({{"rank", e.rank},
                    {"tied", tied(r.ranking, i)},
                    {"generating", e.extension.generating},
                    {"worlds", ids_json(e.extension.model_set)},
                    {"assignments", assignments_json(r.signature, e.extension.model_set)},
                    {"inconsistent", e.extension.inconsistent},
                    {"eps_min", optional_rational_json(e.eps_min)},
                    {"witness_order", e.witness_order},
                    {"step_probabilities", rationals_json(e.witness_step_probs)}});
  }
  return {{"command", "rank"}, {"props", r.signature.props()}, {"ranking", list}};
}

Ranking ranking_from_json(const json& j) {
  return guarded([&] {
    expect_command(j, "rank");
    Ranking r{signature_from(j), {}};
    for (const auto& e : j.at("ranking")) {
      RankedExtension ranked;
      ranked.extension = {e.at("generating").get<std::vector<std::string>>(), worlds_from(e.at("worlds"), r.signature),
                          e.at("inconsistent").get<bool>()};
      ranked.eps_min = optional_rational_from(e.at("eps_min"));
      ranked.witness_order = e.at("witness_order").get<std::vector<std::string>>();
      ranked.witness_step_probs = rationals_from(e.at("step_probabilities"));
      ranked.rank = e.at("rank").get<std::size_t>();
      r.ranking.push_back(std::move(ranked));
    }
    return r;
  });
}

std::string to_text(const Ranking& r) {
  std::ostringstream os;
  for (std::size_t i = 0; i < r.ranking.size(); ++i) {
    const auto& e = r.ranking[i];
    if (e.rankable()) {
      os << "rank " << e.rank << (tied(r.ranking, i) ? " (tie)" : "") << ": eps_min " << to_string(*e.eps_min);
    } else {
      os << "unranked: no grounded order can be replayed at any epsilon < 1";
    }
    os << "  generating {" << join(e.extension.generating, ", ") << "}\n";
    os << "  models: " << describe_worlds(r.signature, e.extension.model_set) << "\n";
    if (e.rankable()) {
      std::vector<std::string> probs;
      for (const auto& p : e.witness_step_probs) probs.push_back(to_string(p));
      os << "  witness <" << join(e.witness_order, ", ") << ">  step Pr: " << join(probs, ", ") << "\n";
    }
  }
  return os.str();
}

// ---- check

json to_json(const Check& r) {
  json list = json::array();
  for (const auto& item : r.items) {
    list.push_back({{"name", item.name}, {"status", to_string(item.status)}, {"detail", item.detail}});
  }
  return {{"command", "check"}, {"passed", r.passed()}, {"checks", list}};
}

std::string to_text(const Check& r) {
  std::ostringstream os;
  for (const auto& item : r.items) {
    os << "[" << to_string(item.status) << "] " << item.name;
    if (!item.detail.empty()) os << ": " << item.detail;
    os << "\n";
  }
  os << (r.passed() ? "check passed\n" : "check FAILED\n");
  return os.str();
}

}  // namespace nmr::report
