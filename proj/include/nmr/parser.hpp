#pragma once

#include <cstddef>
#include <string_view>

#include "nmr/formula.hpp"
#include "nmr/signature.hpp"

namespace nmr {

// Where the first character of the parsed text sits in its enclosing source;
// used so errors inside a theory file point at the file position.
struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

// Grammar, loosest binding first:
//   iff     := implies ( "<->" iff )?
//   implies := or ( "->" implies )?
//   or      := and ( "|" and )*
//   and     := unary ( "&" unary )*
//   unary   := "!" unary | "(" iff ")" | "true" | "false" | atom
// With `sig` set, atoms outside it are rejected; otherwise any legal name is
// accepted and Formula::atoms() yields the inferred set.
Formula parse_formula(std::string_view text, const Signature* sig = nullptr, SourcePos origin = {});

}  // namespace nmr
