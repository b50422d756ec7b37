#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nmr/default_logic.hpp"
#include "nmr/rational.hpp"
#include "nmr/world_model.hpp"

namespace nmr {

inline constexpr std::size_t kDefaultOrderingCap = 8;

struct RankedExtension {
  Extension extension;
  // Empty when no grounded ordering can be replayed at any ε < 1.
  std::optional<Rational> eps_min;
  std::vector<std::string> witness_order;
  std::vector<Rational> witness_step_probs;
  // 1-based; extensions with equal eps_min share a rank. 0 when unrankable.
  std::size_t rank = 0;

  bool rankable() const { return eps_min.has_value(); }
};

// Scores an extension; lower is better.
class GoodnessMeasure {
 public:
  virtual ~GoodnessMeasure() = default;
  virtual RankedExtension measure(const DefaultTheory& theory, const WorldModel& m,
                                  const Extension& extension) const = 0;
};

// Smallest ε at which sequential thresholding over F accepts the generating
// consequents in some grounded order: the minimum over grounded orderings of
// the largest 1 − Pr(γ_i | F ∪ {γ_1..γ_{i-1}}). Orderings that hit a
// zero-mass context or would need ε = 1 are dropped.
class EpsilonMin : public GoodnessMeasure {
 public:
  explicit EpsilonMin(std::size_t max_generating = kDefaultOrderingCap) : max_generating_(max_generating) {}

  // Throws SemanticError for a non-normal theory, CapExceeded when the
  // extension has more than `max_generating` generating defaults and
  // ZeroMassError when F has no mass.
  RankedExtension measure(const DefaultTheory& theory, const WorldModel& m,
                          const Extension& extension) const override;

 private:
  std::size_t max_generating_;
};

RankedExtension epsilon_min(const DefaultTheory& theory, const WorldModel& m, const Extension& extension,
                            std::size_t max_generating = kDefaultOrderingCap);

// All extensions, ascending by score, ties by model set, unrankable last.
std::vector<RankedExtension> rank_extensions(const DefaultTheory& theory, const WorldModel& m,
                                             const GoodnessMeasure& measure = EpsilonMin{},
                                             std::size_t max_defaults = kDefaultRuleCap);

}  // namespace nmr
