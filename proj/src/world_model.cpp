#include "nmr/world_model.hpp"

#include "nmr/error.hpp"
#include "nmr/semantics.hpp"

namespace nmr {

WorldId world_of(const Signature& sig, const Assignment& assignment) {
  std::vector<bool> seen(sig.size(), false);
  WorldId id = 0;
  for (const auto& [name, value] : assignment) {
    const auto k = sig.index_of(name);
    if (!k) throw SemanticError("proposition '" + name + "' is not in the signature");
    if (seen[*k]) throw SemanticError("proposition '" + name + "' assigned twice");
    seen[*k] = true;
    if (value) id |= WorldId{1} << *k;
  }
  for (std::size_t k = 0; k < sig.size(); ++k) {
    if (!seen[k]) throw SemanticError("assignment misses proposition '" + sig.props()[k] + "'");
  }
  return id;
}

WorldModel WorldModel::build(Signature sig, const std::vector<WeightEntry>& entries,
                             const Rational& default_weight) {
  if (default_weight < 0) throw SemanticError("negative default weight " + to_string(default_weight));
  std::vector<Rational> weights(sig.world_count(), default_weight);
  std::vector<bool> listed(sig.world_count(), false);
  for (const auto& entry : entries) {
    const WorldId id = world_of(sig, entry.assignment);
    if (listed[id]) throw SemanticError("world {" + describe_world(sig, id) + "} listed twice");
    if (entry.weight < 0) {
      throw SemanticError("negative weight " + to_string(entry.weight) + " for {" + describe_world(sig, id) + "}");
    }
    listed[id] = true;
    weights[id] = entry.weight;
  }
  Rational total = 0;
  for (const auto& w : weights) total += w;
  if (total == 0) throw SemanticError("weight model has zero total mass");
  return WorldModel(std::move(sig), std::move(weights));
}

WorldModel WorldModel::scaled(const Rational& c) const {
  if (c <= 0) throw SemanticError("scale factor must be positive");
  std::vector<Rational> weights = weights_;
  for (auto& w : weights) w *= c;
  return WorldModel(sig_, std::move(weights));
}

Rational mass(const WorldModel& m, const WorldSet& worlds) {
  Rational total = 0;
  worlds.for_each([&](WorldId id) { total += m.weight(id); });
  return total;
}

Rational proportion(const WorldModel& m, const WorldSet& phi_models, const WorldSet& context) {
  const Rational base = mass(m, context);
  if (base == 0) throw ZeroMassError("context has zero mass");
  return mass(m, context & phi_models) / base;
}

Rational proportion(const WorldModel& m, const Formula& phi, const WorldSet& context) {
  return proportion(m, models_of(phi, m.signature()), context);
}

Rational conditional_probability(const WorldModel& m, const Formula& psi, std::span<const Formula> given) {
  return proportion(m, psi, models_of(given, m.signature()));
}

}  // namespace nmr
