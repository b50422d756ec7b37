#include "nmr/formula.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>

namespace nmr {

struct Formula::Node {
  Kind kind;
  std::string name;
  std::vector<Formula> children;
};

namespace {

// Binding strength used by the printer; higher binds tighter.
int precedence(Formula::Kind kind) {
  switch (kind) {
    case Formula::Kind::kIff: return 1;
    case Formula::Kind::kImplies: return 2;
    case Formula::Kind::kOr: return 3;
    case Formula::Kind::kAnd: return 4;
    case Formula::Kind::kNot: return 5;
    default: return 6;
  }
}

const char* symbol(Formula::Kind kind) {
  switch (kind) {
    case Formula::Kind::kAnd: return " & ";
    case Formula::Kind::kOr: return " | ";
    case Formula::Kind::kImplies: return " -> ";
    case Formula::Kind::kIff: return " <-> ";
    default: return "";
  }
}

bool right_associative(Formula::Kind kind) {
  return kind == Formula::Kind::kImplies || kind == Formula::Kind::kIff;
}

void print(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::kAtom: out += f.name(); return;
    case Formula::Kind::kTop: out += "true"; return;
    case Formula::Kind::kBottom: out += "false"; return;
    case Formula::Kind::kNot: {
      out += '!';
      const bool paren = precedence(f.operand().kind()) < precedence(Formula::Kind::kNot);
      if (paren) out += '(';
      print(f.operand(), out);
      if (paren) out += ')';
      return;
    }
    default: break;
  }
  const int own = precedence(f.kind());
  const bool right = right_associative(f.kind());
  const int l = precedence(f.lhs().kind());
  const int r = precedence(f.rhs().kind());
  const bool paren_l = right ? l <= own : l < own;
  const bool paren_r = right ? r < own : r <= own;
  if (paren_l) out += '(';
  print(f.lhs(), out);
  if (paren_l) out += ')';
  out += symbol(f.kind());
  if (paren_r) out += '(';
  print(f.rhs(), out);
  if (paren_r) out += ')';
}

void collect_atoms(const Formula& f, std::vector<std::string>& out) {
  if (f.kind() == Formula::Kind::kAtom) {
    if (std::find(out.begin(), out.end(), f.name()) == out.end()) out.push_back(f.name());
  } else if (f.kind() == Formula::Kind::kNot) {
    collect_atoms(f.operand(), out);
  } else if (f.is_binary()) {
    collect_atoms(f.lhs(), out);
    collect_atoms(f.rhs(), out);
  }
}

}  // namespace

Formula::Formula() : Formula(top()) {}

Formula Formula::atom(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Kind::kAtom, std::move(name), {}}));
}

Formula Formula::top() {
  static const auto node = std::make_shared<const Node>(Node{Kind::kTop, {}, {}});
  return Formula(node);
}

Formula Formula::bottom() {
  static const auto node = std::make_shared<const Node>(Node{Kind::kBottom, {}, {}});
  return Formula(node);
}

Formula Formula::negation(Formula operand) {
  return Formula(std::make_shared<const Node>(Node{Kind::kNot, {}, {std::move(operand)}}));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Kind::kAnd, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Kind::kOr, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Kind::kImplies, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula Formula::equivalence(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Kind::kIff, {}, {std::move(lhs), std::move(rhs)}}));
}

Formula::Kind Formula::kind() const { return node_->kind; }

bool Formula::is_binary() const {
  const Kind k = node_->kind;
  return k == Kind::kAnd || k == Kind::kOr || k == Kind::kImplies || k == Kind::kIff;
}

const std::string& Formula::name() const {
  assert(kind() == Kind::kAtom);
  return node_->name;
}

const Formula& Formula::operand() const {
  assert(kind() == Kind::kNot);
  return node_->children[0];
}

const Formula& Formula::lhs() const {
  assert(is_binary());
  return node_->children[0];
}

const Formula& Formula::rhs() const {
  assert(is_binary());
  return node_->children[1];
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind || node_->name != other.node_->name) return false;
  return node_->children == other.node_->children;
}

std::vector<std::string> Formula::atoms() const {
  std::vector<std::string> out;
  collect_atoms(*this, out);
  return out;
}

Formula operator!(const Formula& f) { return Formula::negation(f); }
Formula operator&&(const Formula& a, const Formula& b) { return Formula::conjunction(a, b); }
Formula operator||(const Formula& a, const Formula& b) { return Formula::disjunction(a, b); }

Formula conjoin(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = out && fs[i];
  return out;
}

std::string to_string(const Formula& f) {
  std::string out;
  print(f, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Formula& f) { return os << to_string(f); }

bool has_conjunct(const Formula& whole, const Formula& part) {
  if (whole.kind() != Formula::Kind::kAnd) return false;
  for (const Formula* side : {&whole.lhs(), &whole.rhs()}) {
    if (*side == part || has_conjunct(*side, part)) return true;
  }
  return false;
}

}  // namespace nmr
