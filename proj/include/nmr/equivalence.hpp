#pragma once

#include <string>
#include <vector>

#include "nmr/default_logic.hpp"
#include "nmr/threshold.hpp"
#include "nmr/world_model.hpp"

namespace nmr {

enum class CheckStatus { kPass, kFail, kSkipped };

const char* to_string(CheckStatus status);

struct CheckItem {
  std::string name;
  CheckStatus status = CheckStatus::kPass;
  std::string detail;
};

// Extension model sets from the fixed-point engine against the final classes
// of the default partition sequences. Skipped for non-normal theories.
CheckItem check_default_equivalence(const DefaultTheory& theory, std::size_t max_defaults = kDefaultRuleCap);

// Filtered sequences (every order) against the application sequences of the
// threshold partition sequences, including step probabilities, and Pr_Φ(ψ)
// against the weighted proportion of ψ in W_l for every ψ in `queries` and T.
CheckItem check_threshold_equivalence(const ThresholdCollection& c, const WorldModel& m, const ThresholdParams& p,
                                      const std::vector<Formula>& queries,
                                      std::size_t max_rules = kDefaultThresholdCap);

}  // namespace nmr
