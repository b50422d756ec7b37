#include "nmr/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "nmr/equivalence.hpp"
#include "nmr/error.hpp"
#include "nmr/parser.hpp"
#include "nmr/partition.hpp"
#include "nmr/ranking.hpp"
#include "nmr/report.hpp"
#include "nmr/semantics.hpp"
#include "nmr/theory_file.hpp"

namespace nmr::cli {
namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

struct RunConfig {
  std::string theory_path;
  std::string weights_path;
  std::string epsilon_text;
  std::vector<std::string> queries;
  std::string mode;
  std::string format = "text";
  std::string expect_path;
  std::string formula_text;
  std::string props_text;
  bool all_orders = false;
  std::size_t max_props = kDefaultPropCap;
  std::size_t max_defaults = kDefaultRuleCap;
};

// Shared state of one invocation: loaded lazily from the config.
class Session {
 public:
  explicit Session(const RunConfig& cfg) : cfg_(cfg) {}

  const TheoryFile& theory() {
    if (!theory_) theory_ = load_theory(cfg_.theory_path, cfg_.max_props);
    return *theory_;
  }

  const WorldModel& model() {
    if (!model_) {
      model_ = cfg_.weights_path.empty() ? WorldModel::uniform(theory().signature)
                                         : load_weights(cfg_.weights_path, theory().signature);
    }
    return *model_;
  }

  std::optional<ThresholdParams> epsilon() const {
    if (cfg_.epsilon_text.empty()) return std::nullopt;
    try {
      return ThresholdParams(parse_rational(cfg_.epsilon_text));
    } catch (const SemanticError& e) {
      throw UsageError(std::string("--epsilon: ") + e.what());
    }
  }

  ThresholdParams require_epsilon() const {
    auto p = epsilon();
    if (!p) throw UsageError("--epsilon is required");
    return *p;
  }

  std::vector<Formula> queries() {
    std::vector<Formula> out;
    for (const auto& q : cfg_.queries) out.push_back(parse_formula(q, &theory().signature));
    return out;
  }

  void emit(std::ostream& out, const report::json& j, const std::string& text) const {
    if (cfg_.format == "json") {
      out << j.dump(2) << "\n";
    } else {
      out << text;
    }
  }

  const RunConfig& config() const { return cfg_; }

 private:
  const RunConfig& cfg_;
  std::optional<TheoryFile> theory_;
  std::optional<WorldModel> model_;
};

report::Extensions build_extensions(Session& s) {
  const auto theory = s.theory().default_theory();
  return {theory.signature(), enumerate_extensions(theory, s.config().max_defaults)};
}

report::ThresholdRun build_threshold(Session& s, const ThresholdParams& p, bool all_orders,
                                     const std::vector<Formula>& queries) {
  if (s.theory().thresholds.empty()) throw SemanticError("theory has no 'threshold' lines");
  const auto c = s.theory().threshold_collection();
  FilterOptions options;
  options.all_orders = all_orders;
  options.max_thresholds = s.config().max_defaults;
  report::ThresholdRun r{c.signature(), p.epsilon(), all_orders, c.thresholds(), queries, {}};
  for (auto& seq : enumerate_filtered_sequences(c, s.model(), p, options)) {
    report::ThresholdRun::Entry entry{seq, sequence_context(c, seq.accepted), {}};
    for (const auto& q : queries) entry.query_probabilities.push_back(threshold_probability(c, s.model(), seq, q));
    r.sequences.push_back(std::move(entry));
  }
  return r;
}

report::Partitions build_partitions(Session& s, const std::string& mode, const std::optional<ThresholdParams>& p) {
  const auto& file = s.theory();
  std::vector<NmRule> rules;
  std::optional<Rational> epsilon;
  if (mode == "default") {
    rules = default_rules_of(file.default_theory());
  } else {
    if (!p) throw UsageError("--mode threshold needs --epsilon");
    rules = threshold_rules_of(file.threshold_collection(), s.model(), *p);
    epsilon = p->epsilon();
  }
  report::Partitions r{file.signature, mode, epsilon, {}, {}};
  for (const auto& rule : rules) r.rules.push_back({rule.name, rule.cond_text, to_string(rule.res)});
  r.sequences = enumerate_partition_sequences(file.signature, file.facts, rules, s.config().max_defaults);
  return r;
}

report::Ranking build_ranking(Session& s) {
  const auto theory = s.theory().default_theory();
  return {theory.signature(), rank_extensions(theory, s.model(), EpsilonMin{}, s.config().max_defaults)};
}

int cmd_extensions(Session& s, std::ostream& out) {
  const auto r = build_extensions(s);
  s.emit(out, report::to_json(r), report::to_text(r));
  return kSuccess;
}

int cmd_threshold(Session& s, std::ostream& out) {
  const auto p = s.require_epsilon();
  const auto r = build_threshold(s, p, s.config().all_orders, s.queries());
  s.emit(out, report::to_json(r), report::to_text(r));
  return kSuccess;
}

int cmd_partitions(Session& s, std::ostream& out) {
  const auto r = build_partitions(s, s.config().mode, s.epsilon());
  s.emit(out, report::to_json(r), report::to_text(r));
  return kSuccess;
}

int cmd_rank(Session& s, std::ostream& out) {
  const auto r = build_ranking(s);
  s.emit(out, report::to_json(r), report::to_text(r));
  return kSuccess;
}

bool same_ranking(const report::Ranking& a, const report::Ranking& b) {
  if (a.ranking.size() != b.ranking.size()) return false;
  for (std::size_t i = 0; i < a.ranking.size(); ++i) {
    const auto& x = a.ranking[i];
    const auto& y = b.ranking[i];
    if (!(x.extension == y.extension) || x.eps_min != y.eps_min || x.witness_order != y.witness_order ||
        x.witness_step_probs != y.witness_step_probs || x.rank != y.rank) {
      return false;
    }
  }
  return true;
}

bool same_threshold(const report::ThresholdRun& a, const report::ThresholdRun& b) {
  if (a.thresholds != b.thresholds || a.sequences.size() != b.sequences.size()) return false;
  for (std::size_t i = 0; i < a.sequences.size(); ++i) {
    const auto& x = a.sequences[i];
    const auto& y = b.sequences[i];
    if (!(x.sequence == y.sequence) || x.context != y.context || x.query_probabilities != y.query_probabilities) {
      return false;
    }
  }
  return true;
}

// Recomputes the report stored in `path` from the instance and compares.
CheckItem check_expected(Session& s, const std::string& path) {
  CheckItem item{"expected report " + path, CheckStatus::kPass, {}};
  report::json expected;
  try {
    expected = report::json::parse(read_file(path));
  } catch (const report::json::exception& e) {
    throw ParseError(std::string("expected report is not JSON: ") + e.what(), 1, 1);
  }
  const std::string command = expected.value("command", "");
  bool same = false;
  if (command == "extensions") {
    const auto want = report::extensions_from_json(expected);
    same = want.signature == s.theory().signature && want.extensions == build_extensions(s).extensions;
  } else if (command == "rank") {
    const auto want = report::ranking_from_json(expected);
    same = want.signature == s.theory().signature && same_ranking(want, build_ranking(s));
  } else if (command == "threshold") {
    const auto want = report::threshold_from_json(expected);
    same = want.signature == s.theory().signature &&
           same_threshold(want, build_threshold(s, ThresholdParams(want.epsilon), want.all_orders, want.queries));
  } else if (command == "partitions") {
    const auto want = report::partitions_from_json(expected);
    std::optional<ThresholdParams> p;
    if (want.epsilon) p.emplace(*want.epsilon);
    same = want.signature == s.theory().signature && want.sequences == build_partitions(s, want.mode, p).sequences;
  } else {
    throw ParseError("expected report has unknown command '" + command + "'", 1, 1);
  }
  if (!same) {
    item.status = CheckStatus::kFail;
    item.detail = "recomputed '" + command + "' report differs";
  } else {
    item.detail = "'" + command + "' report reproduced";
  }
  return item;
}

CheckItem check_filtered_conditions(Session& s, const ThresholdParams& p) {
  CheckItem item{"filtered sequences satisfy both acceptance conditions", CheckStatus::kPass, {}};
  const auto c = s.theory().threshold_collection();
  FilterOptions options;
  options.all_orders = true;
  options.max_thresholds = s.config().max_defaults;
  const auto all = enumerate_filtered_sequences(c, s.model(), p, options);
  for (const auto& seq : all) {
    if (!is_filtered_sequence(c, s.model(), p, seq.accepted)) {
      item.status = CheckStatus::kFail;
      item.detail = "an emitted sequence violates the threshold or maximality condition";
      return item;
    }
  }
  item.detail = std::to_string(all.size()) + " sequence(s) re-verified";
  return item;
}

CheckItem check_ranking_replay(Session& s) {
  CheckItem item{"ranking witnesses replay as filtered sequences at eps_min", CheckStatus::kPass, {}};
  const auto theory = s.theory().default_theory();
  if (!theory.all_normal()) {
    item.status = CheckStatus::kSkipped;
    item.detail = "theory has non-normal defaults";
    return item;
  }
  if (mass(s.model(), theory.fact_models()) == 0) {
    item.status = CheckStatus::kSkipped;
    item.detail = "facts have zero mass";
    return item;
  }
  std::size_t replayed = 0;
  for (const auto& ranked : rank_extensions(theory, s.model(), EpsilonMin{}, s.config().max_defaults)) {
    if (!ranked.rankable()) continue;
    std::vector<Formula> consequents;
    for (const auto& name : ranked.witness_order) {
      const Formula& g = theory.defaults()[theory.rule_index(name)].consequent;
      if (std::find(consequents.begin(), consequents.end(), g) == consequents.end()) consequents.push_back(g);
    }
    const ThresholdCollection c(theory.signature(), consequents, theory.facts());
    const auto seqs = enumerate_filtered_sequences(c, s.model(), ThresholdParams(*ranked.eps_min));
    const bool found = std::any_of(seqs.begin(), seqs.end(), [&](const FilteredSequence& seq) {
      return seq.accepted.size() == consequents.size();
    });
    if (!found) {
      item.status = CheckStatus::kFail;
      item.detail = "witness for generating {" + std::to_string(ranked.witness_order.size()) +
                    " rules} is not accepted at its eps_min";
      return item;
    }
    ++replayed;
  }
  item.detail = std::to_string(replayed) + " extension(s) replayed";
  return item;
}

int cmd_check(Session& s, std::ostream& out) {
  report::Check r;
  const auto theory = s.theory().default_theory();
  r.items.push_back(check_default_equivalence(theory, s.config().max_defaults));
  r.items.push_back(check_ranking_replay(s));

  const auto p = s.epsilon();
  if (p && !s.theory().thresholds.empty()) {
    const auto c = s.theory().threshold_collection();
    r.items.push_back(check_threshold_equivalence(c, s.model(), *p, s.queries(), s.config().max_defaults));
    r.items.push_back(check_filtered_conditions(s, *p));
  } else {
    r.items.push_back({"filtered sequences = threshold partition sequences", CheckStatus::kSkipped,
                       p ? "theory has no 'threshold' lines" : "no --epsilon given"});
  }
  if (!s.config().expect_path.empty()) r.items.push_back(check_expected(s, s.config().expect_path));

  s.emit(out, report::to_json(r), report::to_text(r));
  return r.passed() ? kSuccess : kCheckFailed;
}

std::vector<std::string> split_props(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (char ch : text + ",") {
    if (ch == ',') {
      const auto b = current.find_first_not_of(" \t");
      const auto e = current.find_last_not_of(" \t");
      if (b != std::string::npos) out.push_back(current.substr(b, e - b + 1));
      current.clear();
    } else {
      current += ch;
    }
  }
  return out;
}

int cmd_models(const RunConfig& cfg, std::ostream& out) {
  Formula f;
  Signature sig;
  if (cfg.props_text.empty()) {
    f = parse_formula(cfg.formula_text);
    sig = Signature(f.atoms(), cfg.max_props);
  } else {
    sig = Signature(split_props(cfg.props_text), cfg.max_props);
    f = parse_formula(cfg.formula_text, &sig);
  }
  const WorldSet worlds = models_of(f, sig);
  if (cfg.format == "json") {
    report::json assignments = report::json::array();
    worlds.for_each([&](WorldId id) { assignments.push_back(describe_world(sig, id)); });
    const report::json j = {{"command", "models"},
                            {"props", sig.props()},
                            {"formula", to_string(f)},
                            {"count", worlds.count()},
                            {"worlds", worlds.ids()},
                            {"assignments", assignments}};
    out << j.dump(2) << "\n";
  } else {
    out << worlds.count() << (worlds.count() == 1 ? " model" : " models") << " of " << to_string(f) << "\n";
    worlds.for_each([&](WorldId id) { out << "  {" << describe_world(sig, id) << "}\n"; });
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Default extensions, sequential thresholding and partition sequences over weighted worlds", "nmr"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--max-props", cfg.max_props, "Proposition cap")->check(CLI::Range(std::size_t{1}, kHardPropLimit));
  };
  auto add_theory = [&](CLI::App* sub) {
    sub->add_option("FILE", cfg.theory_path, "Theory file")->required()->check(CLI::ExistingFile);
    sub->add_option("--max-defaults", cfg.max_defaults, "Cap on defaults / rules explored exhaustively");
    add_common(sub);
  };
  auto add_weights = [&](CLI::App* sub) {
    sub->add_option("--weights", cfg.weights_path, "Weight file (uniform when omitted)")->check(CLI::ExistingFile);
  };

  auto* extensions = app.add_subcommand("extensions", "List every extension of the default theory");
  add_theory(extensions);

  auto* threshold = app.add_subcommand("threshold", "Enumerate filtered sequences");
  add_theory(threshold);
  add_weights(threshold);
  threshold->add_option("--epsilon", cfg.epsilon_text, "Sequential threshold parameter in [0, 1)")->required();
  threshold->add_option("--query", cfg.queries, "Formula whose threshold probability to report");
  threshold->add_flag("--all-orders", cfg.all_orders, "Emit every acceptance order");

  auto* partitions = app.add_subcommand("partitions", "Enumerate partition sequences");
  add_theory(partitions);
  add_weights(partitions);
  partitions->add_option("--mode", cfg.mode, "Rule instantiation")
      ->required()
      ->check(CLI::IsMember({"default", "threshold"}));
  partitions->add_option("--epsilon", cfg.epsilon_text, "Sequential threshold parameter (threshold mode)");

  auto* rank = app.add_subcommand("rank", "Rank extensions by eps_min");
  add_theory(rank);
  add_weights(rank);

  auto* check = app.add_subcommand("check", "Cross-check the engines on one instance");
  add_theory(check);
  add_weights(check);
  check->add_option("--epsilon", cfg.epsilon_text, "Sequential threshold parameter");
  check->add_option("--query", cfg.queries, "Extra formulas for the threshold probability comparison");
  check->add_option("--expect", cfg.expect_path, "Saved JSON report to reproduce")->check(CLI::ExistingFile);

  auto* models = app.add_subcommand("models", "List the worlds satisfying a formula");
  models->add_option("FORMULA", cfg.formula_text, "Formula")->required();
  models->add_option("--props", cfg.props_text, "Comma-separated signature (inferred when omitted)");
  add_common(models);

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("nmr");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  Session session(cfg);
  try {
    if (*extensions) return cmd_extensions(session, out);
    if (*threshold) return cmd_threshold(session, out);
    if (*partitions) return cmd_partitions(session, out);
    if (*rank) return cmd_rank(session, out);
    if (*check) return cmd_check(session, out);
    return cmd_models(cfg, out);
  } catch (const ParseError& e) {
    err << "nmr: parse error: " << e.what() << "\n";
    return kUsageError;
  } catch (const UsageError& e) {
    err << "nmr: " << e.what() << "\n";
    return kUsageError;
  } catch (const SemanticError& e) {
    err << "nmr: " << e.what() << "\n";
    return kSemanticError;
  } catch (const Error& e) {
    err << "nmr: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace nmr::cli
