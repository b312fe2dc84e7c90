#pragma once

#include <cstdint>
#include <vector>

#include "coalctrl/model.hpp"

namespace coalctrl::detail {

/// One action set inside a single interval together with its exact effect on
/// the coalition and favored-party vote counts, relative to doing nothing.
struct DeltaOption {
  std::int64_t dc = 0;
  std::int64_t df = 0;
  std::vector<int> set;
};

struct DeltaCombineResult {
  bool found = false;
  std::vector<int> witness;
  std::int64_t dc = 0;  // achieved cumulative deltas when found
  std::int64_t df = 0;
  std::uint64_t state_entries = 0;
};

/// Reachability DP over cumulative (coalition delta, favored delta) pairs,
/// picking one option per interval under the shared budget. Interval effects
/// are independent, so pairs combine additively; each state is kept at its
/// minimal budget use. Accepts the first state (in delta order) whose totals
/// satisfy both objectives.
DeltaCombineResult combine_delta_options(const std::vector<std::vector<DeltaOption>>& options,
                                         int budget, std::int64_t base_c, std::int64_t base_f,
                                         const ObjectiveSpec& obj, std::int64_t total_voters);

}  // namespace coalctrl::detail
