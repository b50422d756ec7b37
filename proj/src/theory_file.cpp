#include "nmr/theory_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "nmr/error.hpp"
#include "nmr/parser.hpp"

namespace nmr {
namespace {

// A piece of a line together with its 1-based column.
struct Span {
  std::string_view text;
  std::size_t column;
};

Span trim(Span s) {
  while (!s.text.empty() && std::isspace(static_cast<unsigned char>(s.text.front()))) {
    s.text.remove_prefix(1);
    ++s.column;
  }
  while (!s.text.empty() && std::isspace(static_cast<unsigned char>(s.text.back()))) s.text.remove_suffix(1);
  return s;
}

Span sub(Span s, std::size_t pos, std::size_t n = std::string_view::npos) {
  return {s.text.substr(pos, n), s.column + pos};
}

struct Line {
  std::size_t number;
  Span body;
};

// Non-blank lines with comments stripped.
std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  while (!text.empty() || number == 0) {
    ++number;
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Span body = trim({raw, 1});
    if (!body.text.empty()) out.push_back({number, body});
    if (nl == std::string_view::npos) break;
  }
  return out;
}

// Splits "keyword rest" at the first whitespace run.
std::pair<std::string_view, Span> keyword(const Line& line) {
  const auto& t = line.body.text;
  std::size_t n = 0;
  while (n < t.size() && !std::isspace(static_cast<unsigned char>(t[n]))) ++n;
  return {t.substr(0, n), trim(sub(line.body, n))};
}

[[noreturn]] void fail(const std::string& what, const Line& line, std::size_t column) {
  throw ParseError(what, line.number, column);
}

Formula formula_at(const Line& line, Span s, const Signature* sig) {
  s = trim(s);
  if (s.text.empty()) fail("expected a formula", line, s.column);
  return parse_formula(s.text, sig, SourcePos{line.number, s.column});
}

struct PendingRule {
  Line line;
  std::string name;
  Span prerequisite;
  std::vector<Span> justifications;
  Span consequent;
};

PendingRule split_default(const Line& line, Span rest) {
  const auto colon = rest.text.find(':');
  if (colon == std::string_view::npos) fail("expected '<name>:' after 'default'", line, rest.column);
  const Span name = trim(sub(rest, 0, colon));
  if (!is_proposition_name(name.text)) fail("illegal default name", line, name.column);
  const Span body = sub(rest, colon + 1);
  const auto sep = body.text.find("::");
  if (sep == std::string_view::npos) fail("expected '::' before the justifications", line, body.column);
  const Span after = sub(body, sep + 2);
  const auto slash = after.text.find('/');
  if (slash == std::string_view::npos) fail("expected '/' before the consequent", line, after.column);

  PendingRule rule{line, std::string(name.text), trim(sub(body, 0, sep)), {}, trim(sub(after, slash + 1))};
  const Span justs = trim(sub(after, 0, slash));
  if (!justs.text.empty()) {
    std::size_t start = 0;
    for (;;) {
      const auto comma = justs.text.find(',', start);
      rule.justifications.push_back(trim(sub(justs, start, comma == std::string_view::npos ? comma : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  return rule;
}

}  // namespace

TheoryFile parse_theory(std::string_view text, std::size_t prop_cap) {
  const std::vector<Line> lines = split_lines(text);

  std::optional<std::vector<std::string>> declared;
  for (const Line& line : lines) {
    const auto [word, rest] = keyword(line);
    if (word != "prop") continue;
    if (declared) fail("'prop' declared twice", line, line.body.column);
    declared.emplace();
    std::size_t start = 0;
    for (;;) {
      const auto comma = rest.text.find(',', start);
      const Span name = trim(sub(rest, start, comma == std::string_view::npos ? comma : comma - start));
      if (!is_proposition_name(name.text)) fail("illegal proposition name", line, name.column);
      if (std::find(declared->begin(), declared->end(), name.text) != declared->end()) {
        fail("proposition '" + std::string(name.text) + "' declared twice", line, name.column);
      }
      declared->emplace_back(name.text);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }

  std::optional<Signature> sig;
  if (declared) sig.emplace(*declared, prop_cap);
  const Signature* fixed = sig ? &*sig : nullptr;

  TheoryFile out;
  std::vector<std::string> seen_atoms;
  auto note = [&](const Formula& f) {
    for (auto& a : f.atoms()) {
      if (std::find(seen_atoms.begin(), seen_atoms.end(), a) == seen_atoms.end()) seen_atoms.push_back(a);
    }
    return f;
  };

  for (const Line& line : lines) {
    const auto [word, rest] = keyword(line);
    if (word == "prop") continue;
    if (word == "fact") {
      out.facts.push_back(note(formula_at(line, rest, fixed)));
    } else if (word == "threshold") {
      out.thresholds.push_back(note(formula_at(line, rest, fixed)));
    } else if (word == "default") {
      const PendingRule p = split_default(line, rest);
      DefaultRule rule;
      rule.name = p.name;
      rule.prerequisite = p.prerequisite.text.empty() ? Formula::top() : note(formula_at(line, p.prerequisite, fixed));
      for (const Span& j : p.justifications) rule.justifications.push_back(note(formula_at(line, j, fixed)));
      rule.consequent = note(formula_at(line, p.consequent, fixed));
      if (std::any_of(out.defaults.begin(), out.defaults.end(),
                      [&](const DefaultRule& r) { return r.name == rule.name; })) {
        fail("default '" + rule.name + "' defined twice", line, rest.column);
      }
      out.defaults.push_back(std::move(rule));
    } else {
      fail("unknown directive '" + std::string(word) + "'", line, line.body.column);
    }
  }

  out.signature = sig ? std::move(*sig) : Signature(seen_atoms, prop_cap);
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

TheoryFile load_theory(const std::filesystem::path& path, std::size_t prop_cap) {
  return parse_theory(read_file(path), prop_cap);
}

WorldModel parse_weights(std::string_view text, const Signature& sig) {
  std::optional<Rational> default_weight;
  std::vector<WeightEntry> entries;
  auto rational_at = [](const Line& line, Span s) {
    try {
      return parse_rational(s.text);
    } catch (const SemanticError& e) {
      fail(e.what(), line, s.column);
    }
  };

  for (const Line& line : split_lines(text)) {
    const auto [word, rest] = keyword(line);
    if (word == "default_weight") {
      if (default_weight) fail("'default_weight' given twice", line, line.body.column);
      default_weight = rational_at(line, rest);
    } else if (word == "weight") {
      const auto colon = rest.text.rfind(':');
      if (colon == std::string_view::npos) fail("expected ': <weight>'", line, rest.column);
      WeightEntry entry;
      entry.weight = rational_at(line, trim(sub(rest, colon + 1)));
      const Span assignment = sub(rest, 0, colon);
      std::size_t i = 0;
      while (i < assignment.text.size()) {
        if (std::isspace(static_cast<unsigned char>(assignment.text[i]))) {
          ++i;
          continue;
        }
        std::size_t n = i;
        while (n < assignment.text.size() && !std::isspace(static_cast<unsigned char>(assignment.text[n]))) ++n;
        const Span item = sub(assignment, i, n - i);
        const auto eq = item.text.find('=');
        if (eq == std::string_view::npos) fail("expected '<prop>=<0|1>'", line, item.column);
        const std::string_view name = item.text.substr(0, eq);
        const std::string_view value = item.text.substr(eq + 1);
        if (!sig.contains(name)) fail("unknown proposition '" + std::string(name) + "'", line, item.column);
        if (value != "0" && value != "1") fail("truth value must be 0 or 1", line, item.column + eq + 1);
        entry.assignment.emplace_back(std::string(name), value == "1");
        i = n;
      }
      entries.push_back(std::move(entry));
    } else {
      fail("unknown directive '" + std::string(word) + "'", line, line.body.column);
    }
  }
  return WorldModel::build(sig, entries, default_weight.value_or(Rational(1)));
}

WorldModel load_weights(const std::filesystem::path& path, const Signature& sig) {
  return parse_weights(read_file(path), sig);
}

}  // namespace nmr
