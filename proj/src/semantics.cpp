#include "nmr/semantics.hpp"

#include "nmr/error.hpp"

namespace nmr {
namespace {

std::size_t require_atom(const Signature& sig, const std::string& name) {
  const auto k = sig.index_of(name);
  if (!k) throw SemanticError("proposition '" + name + "' is not in the signature");
  return *k;
}

// Bottom-up set construction: each connective becomes a set operation.
WorldSet build(const Formula& f, const Signature& sig) {
  switch (f.kind()) {
    case Formula::Kind::kAtom: {
      const std::size_t k = require_atom(sig, f.name());
      WorldSet out = WorldSet::none(sig);
      for (WorldId w = 0; w < sig.world_count(); ++w) {
        if (world_value(w, k)) out.insert(w);
      }
      return out;
    }
    case Formula::Kind::kTop: return WorldSet::all(sig);
    case Formula::Kind::kBottom: return WorldSet::none(sig);
    case Formula::Kind::kNot: return build(f.operand(), sig).complement();
    case Formula::Kind::kAnd: return build(f.lhs(), sig) & build(f.rhs(), sig);
    case Formula::Kind::kOr: return build(f.lhs(), sig) | build(f.rhs(), sig);
    case Formula::Kind::kImplies: return build(f.lhs(), sig).complement() | build(f.rhs(), sig);
    case Formula::Kind::kIff: {
      const WorldSet l = build(f.lhs(), sig);
      const WorldSet r = build(f.rhs(), sig);
      return (l & r) | (l.complement() & r.complement());
    }
  }
  return WorldSet::none(sig);
}

}  // namespace

bool evaluate(const Formula& f, const Signature& sig, WorldId world) {
  switch (f.kind()) {
    case Formula::Kind::kAtom: return world_value(world, require_atom(sig, f.name()));
    case Formula::Kind::kTop: return true;
    case Formula::Kind::kBottom: return false;
    case Formula::Kind::kNot: return !evaluate(f.operand(), sig, world);
    case Formula::Kind::kAnd: return evaluate(f.lhs(), sig, world) && evaluate(f.rhs(), sig, world);
    case Formula::Kind::kOr: return evaluate(f.lhs(), sig, world) || evaluate(f.rhs(), sig, world);
    case Formula::Kind::kImplies: return !evaluate(f.lhs(), sig, world) || evaluate(f.rhs(), sig, world);
    case Formula::Kind::kIff: return evaluate(f.lhs(), sig, world) == evaluate(f.rhs(), sig, world);
  }
  return false;
}

WorldSet models_of(std::span<const Formula> fs, const Signature& sig) {
  WorldSet out = WorldSet::all(sig);
  for (const Formula& f : fs) out &= build(f, sig);
  return out;
}

WorldSet models_of(const Formula& f, const Signature& sig) { return build(f, sig); }

bool entails(std::span<const Formula> premises, const Formula& f, const Signature& sig) {
  return models_of(premises, sig).is_subset_of(models_of(f, sig));
}

}  // namespace nmr
