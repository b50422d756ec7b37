#include "nmr/ranking.hpp"

#include <algorithm>

#include "nmr/error.hpp"

namespace nmr {

RankedExtension EpsilonMin::measure(const DefaultTheory& theory, const WorldModel& m,
                                    const Extension& extension) const {
  if (!theory.all_normal()) throw SemanticError("ranking needs a theory of normal defaults");
  if (extension.generating.size() > max_generating_) {
    throw CapExceeded("extension has " + std::to_string(extension.generating.size()) +
                      " generating defaults; the cap is " + std::to_string(max_generating_));
  }
  if (mass(m, theory.fact_models()) == 0) throw ZeroMassError("fact set has zero mass");

  RankedExtension out{extension, std::nullopt, {}, {}, 0};
  for (const auto& order : generating_orderings(theory, extension)) {
    WorldSet context = theory.fact_models();
    Rational worst = 0;
    std::vector<Rational> steps;
    bool usable = true;
    for (const auto& name : order) {
      const auto& consequent = theory.compiled(theory.rule_index(name)).consequent;
      if (mass(m, context) == 0) {
        usable = false;
        break;
      }
      Rational pr = proportion(m, consequent, context);
      worst = std::max(worst, Rational(1 - pr));
      steps.push_back(std::move(pr));
      context &= consequent;
    }
    if (!usable || worst >= 1) continue;
    if (!out.eps_min || worst < *out.eps_min) {
      out.eps_min = worst;
      out.witness_order = order;
      out.witness_step_probs = std::move(steps);
    }
  }
  return out;
}

RankedExtension epsilon_min(const DefaultTheory& theory, const WorldModel& m, const Extension& extension,
                            std::size_t max_generating) {
  return EpsilonMin(max_generating).measure(theory, m, extension);
}

std::vector<RankedExtension> rank_extensions(const DefaultTheory& theory, const WorldModel& m,
                                             const GoodnessMeasure& measure, std::size_t max_defaults) {
  std::vector<RankedExtension> out;
  for (const auto& e : enumerate_extensions(theory, max_defaults)) out.push_back(measure.measure(theory, m, e));
  std::stable_sort(out.begin(), out.end(), [](const RankedExtension& a, const RankedExtension& b) {
    if (a.rankable() != b.rankable()) return a.rankable();
    if (a.rankable() && *a.eps_min != *b.eps_min) return *a.eps_min < *b.eps_min;
    return a.extension.model_set < b.extension.model_set;
  });
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!out[i].rankable()) break;
    const bool tied = i > 0 && *out[i].eps_min == *out[i - 1].eps_min;
    out[i].rank = tied ? out[i - 1].rank : i + 1;
  }
  return out;
}

}  // namespace nmr
