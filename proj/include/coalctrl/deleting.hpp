#pragma once

#include <cstdint>
#include <vector>

#include "coalctrl/model.hpp"
#include "coalctrl/ssp.hpp"

namespace coalctrl {

/// One candidate deletion pattern inside a single interval: a run anchored at
/// the interval's left end, one at its right end, and (four-location form)
/// runs hugging the favored party from either side. Deletions not anchored at
/// one of these locations never change any vote.
struct EndRunOption {
  int interval_index = -1;
  int left_run = 0;      // parties removed from the interval's left end
  int right_run = 0;     // parties removed from the interval's right end
  int favored_left = 0;  // parties removed just left of the favored party
  int favored_right = 0; // parties removed just right of the favored party
  std::vector<int> deleted;  // sorted by party id
  std::int64_t coalition_delta = 0;  // vs deleting nothing at all
  std::int64_t favored_delta = 0;
};

/// Enumerates all end-run patterns of total size <= budget, deduplicated and
/// sorted by (size, deleted-id list). `locations` is 2 (ends only) or 4
/// (ends plus both favored-party flanks; requires the favored party inside
/// the interval, which itself is never deleted).
std::vector<EndRunOption> enumerate_end_runs(const ElectionInstance& inst,
                                             const ObjectiveSpec& obj, const Interval& interval,
                                             int budget, int locations, int interval_index);

/// Mode CC, opposition-party deleting. Per opposition interval the best
/// coalition gain for each sub-budget comes from an end-run split; a budget
/// split across intervals is chosen by dynamic programming. Polynomial.
SolveOutcome solve_cc_dop(const ElectionInstance& inst, const ObjectiveSpec& obj, int budget);

/// Mode CCFP, coalition-party deleting, contiguous coalition: simulates every
/// four-location end-run pattern exactly. Mode CC falls back to the immunity
/// answer; throws QueryError when q != 1.
SolveOutcome solve_ccfp_dcp_contiguous(const ElectionInstance& inst, const ObjectiveSpec& obj,
                                       int budget);

/// Mode CCFP DCP for any q: end-run delta pairs per coalition interval,
/// combined across intervals by reachability over the budget.
SolveOutcome solve_ccfp_dcp_dp(const ElectionInstance& inst, const ObjectiveSpec& obj,
                               int budget);

/// Mode CCFP, opposition-party deleting, contiguous coalition: end-run
/// patterns on the two opposition flanks, every budget split between them.
SolveOutcome solve_ccfp_dop_contiguous(const ElectionInstance& inst, const ObjectiveSpec& obj,
                                       int budget);

/// Mode CCFP DOP for any q, end-run delta pairs over all opposition
/// intervals.
SolveOutcome solve_ccfp_dop_dp(const ElectionInstance& inst, const ObjectiveSpec& obj,
                               int budget);

}  // namespace coalctrl
