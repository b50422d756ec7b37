#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "nmr/default_logic.hpp"
#include "nmr/formula.hpp"
#include "nmr/signature.hpp"
#include "nmr/threshold.hpp"
#include "nmr/world_model.hpp"

namespace nmr {

// Contents of a theory file:
//
//   # comment
//   prop a, a', b                      (optional, at most once)
//   fact <formula>
//   default <name>: <prereq> :: <just>, <just>, ... / <consequent>
//   threshold <formula>
//
// Without a `prop` line the signature is every atom in order of first
// appearance.
struct TheoryFile {
  Signature signature;
  std::vector<Formula> facts;
  std::vector<DefaultRule> defaults;
  std::vector<Formula> thresholds;

  DefaultTheory default_theory() const { return DefaultTheory(signature, facts, defaults); }
  ThresholdCollection threshold_collection() const { return ThresholdCollection(signature, thresholds, facts); }
};

// Throws ParseError (with file line and column) on malformed text and
// SemanticError / CapExceeded on well-formed but unusable content.
TheoryFile parse_theory(std::string_view text, std::size_t prop_cap = kDefaultPropCap);
TheoryFile load_theory(const std::filesystem::path& path, std::size_t prop_cap = kDefaultPropCap);

// Weight file:
//
//   default_weight <rational>                   (optional, at most once)
//   weight <p1>=<0|1> <p2>=<0|1> ... : <rational>
WorldModel parse_weights(std::string_view text, const Signature& sig);
WorldModel load_weights(const std::filesystem::path& path, const Signature& sig);

// Whole file as a string; throws Error when unreadable.
std::string read_file(const std::filesystem::path& path);

}  // namespace nmr
