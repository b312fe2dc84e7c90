#pragma once

#include <cstdint>
#include <string>

#include "coalctrl/model.hpp"

namespace coalctrl {

/// Parameters for seeded random instance generation. All sampling uses a
/// fixed-sequence generator with hand-rolled bounded draws, so equal
/// parameters always reproduce the same instance, byte for byte.
struct GenParams {
  std::string kind = "ssp";  // "ssp" (positions + peaks) or "general" (orders)
  int m = 5;                 // parties
  std::int64_t n = 20;       // voters
  int k = 1;                 // action budget
  int q_target = 0;          // coalition intervals to aim for (ssp; 0 = random roles)
  int coalition_permille = 500;  // coalition density when q_target == 0
  int spoiler_permille = 400;    // spoiler density on the acting side (adding)
  Action action = Action::ACP;
  Mode mode = Mode::CC;
  std::uint64_t seed = 0;
};

struct GenResult {
  ProblemInstance problem;
  int achieved_q = 0;  // coalition intervals in the action universe (ssp kind)
};

/// Generates a valid instance: distinct party positions, peaks strictly off
/// every preference divider (rejection sampling), q_target coalition
/// intervals when feasible (clamped to (m+1)/2 otherwise), and thresholds
/// sampled near the baseline tally so decisions land on both sides.
GenResult generate_random(const GenParams& params);

}  // namespace coalctrl
