#include "nmr/threshold.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "nmr/error.hpp"
#include "nmr/semantics.hpp"

namespace nmr {

ThresholdCollection::ThresholdCollection(Signature sig, std::vector<Formula> thresholds, std::vector<Formula> facts)
    : sig_(std::move(sig)), thresholds_(std::move(thresholds)), facts_(std::move(facts)) {
  for (std::size_t i = 0; i < thresholds_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (thresholds_[i] == thresholds_[j]) {
        throw SemanticError("threshold formula '" + to_string(thresholds_[i]) + "' listed twice");
      }
    }
  }
  fact_models_ = models_of(facts_, sig_);
  for (const auto& f : thresholds_) threshold_models_.push_back(models_of(f, sig_));
}

ThresholdParams::ThresholdParams(Rational epsilon) : epsilon_(std::move(epsilon)) {
  if (epsilon_ < 0 || epsilon_ >= 1) {
    throw SemanticError("epsilon must lie in [0, 1), got " + to_string(epsilon_));
  }
}

WorldSet sequence_context(const ThresholdCollection& c, std::span<const std::size_t> accepted) {
  WorldSet context = c.fact_models();
  for (std::size_t i : accepted) context &= c.threshold_models(i);
  return context;
}

Rational step_probability(const ThresholdCollection& c, const WorldModel& m, std::span<const std::size_t> accepted,
                          const Formula& phi) {
  return proportion(m, phi, sequence_context(c, accepted));
}

std::vector<FilteredSequence> enumerate_filtered_sequences(const ThresholdCollection& c, const WorldModel& m,
                                                           const ThresholdParams& p, const FilterOptions& options) {
  const std::size_t n = c.thresholds().size();
  if (n > options.max_thresholds) {
    throw CapExceeded("threshold set has " + std::to_string(n) + " formulas; the cap is " +
                      std::to_string(options.max_thresholds));
  }
  if (mass(m, c.fact_models()) == 0) throw ZeroMassError("fact set has zero mass");
  const Rational threshold = p.threshold();

  std::vector<FilteredSequence> out;
  std::set<std::vector<bool>> seen_sets;
  FilteredSequence current;
  std::vector<bool> used(n, false);

  std::function<void(const WorldSet&)> search = [&](const WorldSet& context) {
    if (!options.all_orders && !seen_sets.insert(used).second) return;
    bool leaf = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      // Mass stays positive: each step keeps at least (1 − ε) > 0 of it.
      Rational pr = proportion(m, c.threshold_models(i), context);
      if (pr < threshold) continue;
      leaf = false;
      used[i] = true;
      current.accepted.push_back(i);
      current.step_probabilities.push_back(std::move(pr));
      search(context & c.threshold_models(i));
      current.step_probabilities.pop_back();
      current.accepted.pop_back();
      used[i] = false;
    }
    if (leaf) out.push_back(current);
  };
  search(c.fact_models());

  std::sort(out.begin(), out.end(),
            [](const FilteredSequence& a, const FilteredSequence& b) { return a.accepted < b.accepted; });
  return out;
}

bool is_filtered_sequence(const ThresholdCollection& c, const WorldModel& m, const ThresholdParams& p,
                          std::span<const std::size_t> accepted) {
  const std::size_t n = c.thresholds().size();
  std::vector<bool> in_sequence(n, false);
  std::vector<Formula> given = c.facts();
  const Rational threshold = p.threshold();
  for (std::size_t i : accepted) {
    if (i >= n || in_sequence[i]) return false;
    if (mass(m, models_of(given, c.signature())) == 0) return false;
    if (conditional_probability(m, c.thresholds()[i], given) < threshold) return false;
    in_sequence[i] = true;
    given.push_back(c.thresholds()[i]);
  }
  if (mass(m, models_of(given, c.signature())) == 0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (in_sequence[i]) continue;
    if (!(conditional_probability(m, c.thresholds()[i], given) < threshold)) return false;
  }
  return true;
}

Rational threshold_probability(const ThresholdCollection& c, const WorldModel& m, const FilteredSequence& seq,
                               const Formula& psi) {
  return proportion(m, psi, sequence_context(c, seq.accepted));
}

}  // namespace nmr
