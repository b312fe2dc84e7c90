#pragma once

#include <cstdint>
#include <vector>

#include "coalctrl/model.hpp"

namespace coalctrl {

struct OracleOptions {
  std::uint64_t cap = std::uint64_t(1) << 20;  // max subsets to enumerate
};

/// Decides by enumerating every legal action set of size <= budget, smallest
/// first and id-lexicographic within a size. The returned witness is the
/// canonically first satisfying set. Throws CapacityError when the
/// enumeration would exceed opts.cap.
SolveOutcome solve_exhaustive(const ElectionInstance& inst, const ObjectiveSpec& obj,
                              const ControlQuery& query, const OracleOptions& opts = {});

struct ImmunityReport {
  bool immune = false;  // no action set beats the do-nothing coalition tally
  std::int64_t baseline_coalition = 0;
  std::int64_t max_coalition = 0;
  std::vector<int> best_set;  // first action set attaining max_coalition
  std::uint64_t subsets_checked = 0;
};

/// Exhaustively confirms that AOP/DCP actions cannot raise the coalition's
/// vote count under mode CC. Enumerates the full pool power set, budget
/// aside, so the cap applies to 2^pool.
ImmunityReport verify_immunity(const ElectionInstance& inst, const ObjectiveSpec& obj,
                               const ControlQuery& query, const OracleOptions& opts = {});

}  // namespace coalctrl
