#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nmr/formula.hpp"
#include "nmr/rational.hpp"
#include "nmr/signature.hpp"
#include "nmr/world_set.hpp"

namespace nmr {

// One listed world: a value for every proposition of the signature.
using Assignment = std::vector<std::pair<std::string, bool>>;

struct WeightEntry {
  Assignment assignment;
  Rational weight;
};

// Weighted possible-world model. Every world of the signature carries a
// nonnegative weight and the total mass is positive.
class WorldModel {
 public:
  // Unlisted worlds get `default_weight`. Throws SemanticError on a partial
  // or repeated assignment, a negative weight, or zero total mass.
  static WorldModel build(Signature sig, const std::vector<WeightEntry>& entries,
                          const Rational& default_weight = Rational(1));
  static WorldModel uniform(Signature sig) { return build(std::move(sig), {}); }

  const Signature& signature() const { return sig_; }
  const Rational& weight(WorldId world) const { return weights_[world]; }
  const std::vector<Rational>& weights() const { return weights_; }

  // Same worlds, every weight multiplied by c > 0.
  WorldModel scaled(const Rational& c) const;

 private:
  WorldModel(Signature sig, std::vector<Rational> weights) : sig_(std::move(sig)), weights_(std::move(weights)) {}

  Signature sig_;
  std::vector<Rational> weights_;
};

// Resolves a full assignment to its world id.
WorldId world_of(const Signature& sig, const Assignment& assignment);

// Σ weights over `worlds`; 0 for the empty set.
Rational mass(const WorldModel& m, const WorldSet& worlds);

// Weighted proportion of φ-worlds in `context`. Throws ZeroMassError when the
// context has no mass.
Rational proportion(const WorldModel& m, const Formula& phi, const WorldSet& context);
Rational proportion(const WorldModel& m, const WorldSet& phi_models, const WorldSet& context);

// Pr(ψ | given) = proportion(m, ψ, models_of(given)).
Rational conditional_probability(const WorldModel& m, const Formula& psi, std::span<const Formula> given);

}  // namespace nmr
