#pragma once

#include <iosfwd>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace nmr {

// Immutable propositional formula. Copies share structure.
class Formula {
 public:
  enum class Kind { kAtom, kTop, kBottom, kNot, kAnd, kOr, kImplies, kIff };

  // Default-constructed formula is ⊤.
  Formula();

  static Formula atom(std::string name);
  static Formula top();
  static Formula bottom();
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula equivalence(Formula lhs, Formula rhs);

  Kind kind() const;
  bool is_binary() const;
  // Only for atoms.
  const std::string& name() const;
  // Only for kNot.
  const Formula& operand() const;
  // Only for binary connectives.
  const Formula& lhs() const;
  const Formula& rhs() const;

  // Structural equality.
  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

  // Atom names in order of first occurrence (left to right).
  std::vector<std::string> atoms() const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

Formula operator!(const Formula& f);
Formula operator&&(const Formula& a, const Formula& b);
Formula operator||(const Formula& a, const Formula& b);

// Conjunction of all members; ⊤ for an empty list.
Formula conjoin(const std::vector<Formula>& fs);

// Renders in the parser's grammar with minimal parentheses.
std::string to_string(const Formula& f);
std::ostream& operator<<(std::ostream& os, const Formula& f);

// True when `part` occurs as a conjunct somewhere in the ∧-tree of `whole`
// (not counting `whole` itself).
bool has_conjunct(const Formula& whole, const Formula& part);

}  // namespace nmr
