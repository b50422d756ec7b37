#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nmr/formula.hpp"
#include "nmr/rational.hpp"
#include "nmr/signature.hpp"
#include "nmr/world_model.hpp"
#include "nmr/world_set.hpp"

namespace nmr {

inline constexpr std::size_t kDefaultThresholdCap = 12;

// ⟨T, F⟩: candidate formulas T, tried in list order, and facts F.
class ThresholdCollection {
 public:
  // Throws SemanticError on a repeated member of T or an atom outside `sig`.
  ThresholdCollection(Signature sig, std::vector<Formula> thresholds, std::vector<Formula> facts);

  const Signature& signature() const { return sig_; }
  const std::vector<Formula>& thresholds() const { return thresholds_; }
  const std::vector<Formula>& facts() const { return facts_; }
  const WorldSet& fact_models() const { return fact_models_; }
  const WorldSet& threshold_models(std::size_t i) const { return threshold_models_[i]; }

 private:
  Signature sig_;
  std::vector<Formula> thresholds_;
  std::vector<Formula> facts_;
  WorldSet fact_models_;
  std::vector<WorldSet> threshold_models_;
};

// Sequential threshold parameter ε, restricted to [0, 1).
class ThresholdParams {
 public:
  explicit ThresholdParams(Rational epsilon);

  const Rational& epsilon() const { return epsilon_; }
  // 1 − ε; a formula is accepted when its probability is at least this.
  Rational threshold() const { return Rational(1) - epsilon_; }

 private:
  Rational epsilon_;
};

struct FilteredSequence {
  // Indices into ThresholdCollection::thresholds(), in acceptance order.
  std::vector<std::size_t> accepted;
  // Probability of each accepted formula at the moment it was accepted.
  std::vector<Rational> step_probabilities;

  bool operator==(const FilteredSequence&) const = default;
};

// Pr(φ | F ∪ accepted). Throws ZeroMassError when the conditioning set has no
// mass.
Rational step_probability(const ThresholdCollection& c, const WorldModel& m, std::span<const std::size_t> accepted,
                          const Formula& phi);

// Worlds of F ∪ accepted.
WorldSet sequence_context(const ThresholdCollection& c, std::span<const std::size_t> accepted);

struct FilterOptions {
  // Emit every acceptance order instead of one witness per accepted set.
  bool all_orders = false;
  std::size_t max_thresholds = kDefaultThresholdCap;
};

// Every maximal filtered sequence. At each step any unaccepted member of T
// whose probability reaches 1 − ε may be accepted next. Unless `all_orders`
// is set, sequences with the same accepted set collapse to the first order
// found (smallest index sequence). Output is sorted by index sequence.
// Throws ZeroMassError when F has no mass.
std::vector<FilteredSequence> enumerate_filtered_sequences(const ThresholdCollection& c, const WorldModel& m,
                                                           const ThresholdParams& p, const FilterOptions& options = {});

// Re-checks both defining conditions directly, without the search: every
// step reaches the threshold given its prefix, and every member of T left out
// stays strictly below it given the whole sequence. Also rejects repeats.
bool is_filtered_sequence(const ThresholdCollection& c, const WorldModel& m, const ThresholdParams& p,
                          std::span<const std::size_t> accepted);

// Pr_Φ(ψ) = Pr(ψ | F ∪ Φ).
Rational threshold_probability(const ThresholdCollection& c, const WorldModel& m, const FilteredSequence& seq,
                               const Formula& psi);

}  // namespace nmr
