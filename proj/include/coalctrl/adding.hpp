#pragma once

#include <vector>

#include "coalctrl/model.hpp"
#include "coalctrl/ssp.hpp"

namespace coalctrl {

/// Keeps only the positionally leftmost and rightmost members of an addition
/// set that lives inside a single same-side interval. Adding the pruned set
/// yields the same coalition total and at least the favored party's votes.
std::vector<int> prune_interval_subset(const ElectionInstance& inst, const ObjectiveSpec& obj,
                                       Action action, const std::vector<int>& subset);

/// Mode CC, coalition-party adding. Per coalition interval only the best
/// 0-, 1- and 2-additions matter; a budget split across intervals is chosen
/// by dynamic programming. Polynomial.
SolveOutcome solve_cc_acp(const ElectionInstance& inst, const ObjectiveSpec& obj, int budget);

/// Mode CCFP restriction of ACP to instances whose coalition is one
/// contiguous interval: checks every spoiler subset of size <= min(2, budget)
/// exactly. Throws QueryError when q != 1.
SolveOutcome solve_ccfp_acp_contiguous(const ElectionInstance& inst, const ObjectiveSpec& obj,
                                       int budget);

/// Mode CCFP ACP for any q: per coalition interval, every reachable
/// (coalition delta, favored delta) pair from a <=2-addition is recorded, and
/// pairs are combined across intervals by reachability over the budget.
SolveOutcome solve_ccfp_acp_dp(const ElectionInstance& inst, const ObjectiveSpec& obj,
                               int budget);

/// Mode CCFP, opposition-party adding, contiguous coalition: at most one
/// spoiler per flanking opposition interval can help, so all such pairs are
/// simulated. Mode CC falls back to the immunity answer.
SolveOutcome solve_ccfp_aop_contiguous(const ElectionInstance& inst, const ObjectiveSpec& obj,
                                       int budget);

/// Mode CCFP AOP for any q, same delta-pair scheme as the ACP DP but over
/// the q+1 opposition intervals. Mode CC falls back to the immunity answer.
SolveOutcome solve_ccfp_aop_dp(const ElectionInstance& inst, const ObjectiveSpec& obj,
                               int budget);

}  // namespace coalctrl
