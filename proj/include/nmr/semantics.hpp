#pragma once

#include <span>

#include "nmr/formula.hpp"
#include "nmr/signature.hpp"
#include "nmr/world_set.hpp"

namespace nmr {

// Classical truth value of `f` in `world`. Throws SemanticError for an atom
// outside `sig`.
bool evaluate(const Formula& f, const Signature& sig, WorldId world);

// Worlds satisfying every formula in `fs`; all worlds for an empty span.
WorldSet models_of(std::span<const Formula> fs, const Signature& sig);
WorldSet models_of(const Formula& f, const Signature& sig);

// premises ⊢ f, decided as models_of(premises) ⊆ models_of(f).
bool entails(std::span<const Formula> premises, const Formula& f, const Signature& sig);

}  // namespace nmr
