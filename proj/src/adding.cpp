#include "coalctrl/adding.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "delta_dp.hpp"

namespace coalctrl {

namespace {

struct AddingContext {
  PartySet base;  // permanent parties; the running set before any addition
  IntervalDecomposition dec;
  std::int64_t base_c = 0;
  std::int64_t base_f = 0;
};

AddingContext make_context(const ElectionInstance& inst, const ObjectiveSpec& obj,
                           Action action) {
  AddingContext ctx;
  ctx.base = inst.permanent_set();
  ctx.dec = decompose_intervals(inst, action_universe(inst, obj, action), obj.coalition);
  const ObjectiveEval eval = evaluate_objectives(inst.tally(ctx.base), obj);
  ctx.base_c = eval.coalition_votes;
  ctx.base_f = eval.favored_votes;
  return ctx;
}

std::vector<int> sorted_by_id(const ElectionInstance& inst, std::vector<int> v) {
  std::sort(v.begin(), v.end(),
            [&](int a, int b) { return inst.party(a).id < inst.party(b).id; });
  return v;
}

std::vector<int> spoilers_in(const ElectionInstance& inst, const Interval& iv) {
  std::vector<int> out;
  for (int p : iv.parties) {
    if (inst.party(p).is_spoiler) out.push_back(p);
  }
  return sorted_by_id(inst, std::move(out));
}

// All subsets of size <= limit (limit <= 2) in (size, lexicographic) order.
std::vector<std::vector<int>> small_subsets(const std::vector<int>& items, int limit) {
  std::vector<std::vector<int>> out;
  out.push_back({});
  const int s = static_cast<int>(items.size());
  if (limit >= 1) {
    for (int i = 0; i < s; ++i) out.push_back({items[i]});
  }
  if (limit >= 2) {
    for (int i = 0; i < s; ++i) {
      for (int j = i + 1; j < s; ++j) out.push_back({items[i], items[j]});
    }
  }
  return out;
}

std::pair<std::int64_t, std::int64_t> addition_deltas(const ElectionInstance& inst,
                                                      const ObjectiveSpec& obj,
                                                      const AddingContext& ctx,
                                                      const std::vector<int>& added) {
  PartySet running = ctx.base;
  for (int p : added) running.add(p);
  const ObjectiveEval eval = evaluate_objectives(inst.tally(running), obj);
  return {eval.coalition_votes - ctx.base_c, eval.favored_votes - ctx.base_f};
}

void require_peaks(const ElectionInstance& inst, const char* solver) {
  if (!inst.is_ssp()) {
    throw QueryError(std::string(solver) + " requires a single-peaked (positioned) instance");
  }
}

std::vector<detail::DeltaOption> interval_options(const ElectionInstance& inst,
                                                  const ObjectiveSpec& obj,
                                                  const AddingContext& ctx, const Interval& iv,
                                                  int limit) {
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<int>> dedup;
  for (const std::vector<int>& set : small_subsets(spoilers_in(inst, iv), limit)) {
    const auto d = addition_deltas(inst, obj, ctx, set);
    dedup.emplace(d, set);  // canonical enumeration order: first set per delta wins
  }
  std::vector<detail::DeltaOption> out;
  out.reserve(dedup.size());
  for (auto& [d, set] : dedup) out.push_back({d.first, d.second, std::move(set)});
  return out;
}

// Per-interval reachable delta pairs from <=2-additions, combined across
// intervals under the shared budget.
SolveOutcome run_delta_dp(const ElectionInstance& inst, const ObjectiveSpec& obj,
                          const ControlQuery& query, const AddingContext& ctx,
                          const std::vector<Interval>& intervals, const char* solver_name) {
  const int limit = std::min(2, query.budget);
  std::uint64_t entries = 0;
  std::vector<std::vector<detail::DeltaOption>> opts;
  opts.reserve(intervals.size());
  for (const Interval& iv : intervals) {
    opts.push_back(interval_options(inst, obj, ctx, iv, limit));
    entries += opts.back().size();
  }

  detail::DeltaCombineResult res = detail::combine_delta_options(
      opts, query.budget, ctx.base_c, ctx.base_f, obj, inst.voter_count());
  entries += res.state_entries;
  SolveOutcome out =
      make_outcome(inst, obj, query, res.found, std::move(res.witness), solver_name, false);
  if (res.found && (out.coalition_votes != ctx.base_c + res.dc ||
                    out.favored_votes != ctx.base_f + res.df)) {
    throw std::logic_error("per-interval deltas failed to add up under re-simulation");
  }
  out.table_entries = entries;
  return out;
}

}  // namespace

std::vector<int> prune_interval_subset(const ElectionInstance& inst, const ObjectiveSpec& obj,
                                       Action action, const std::vector<int>& subset) {
  if (!is_adding(action)) throw QueryError("interval pruning applies to adding variants");
  if (subset.empty()) return {};
  const IntervalDecomposition dec =
      decompose_intervals(inst, action_universe(inst, obj, action), obj.coalition);
  const std::vector<Interval>& side =
      acts_on_coalition(action) ? dec.coalition : dec.opposition;
  std::vector<int> interval_of(inst.party_count(), -1);
  for (size_t j = 0; j < side.size(); ++j) {
    for (int p : side[j].parties) interval_of[p] = static_cast<int>(j);
  }

  int home = -1;
  for (int p : subset) {
    if (!inst.party(p).is_spoiler ||
        obj.coalition.contains(p) != acts_on_coalition(action)) {
      throw QueryError("party '" + inst.party(p).id + "' is not an addable " +
                       action_name(action) + " spoiler");
    }
    if (interval_of[p] < 0) throw QueryError("party '" + inst.party(p).id + "' is outside the decomposition");
    if (home < 0) home = interval_of[p];
    if (interval_of[p] != home) {
      throw QueryError("subset spans more than one interval");
    }
  }

  std::vector<int> by_pos(subset);
  std::sort(by_pos.begin(), by_pos.end(), [&](int a, int b) {
    return *inst.party(a).position < *inst.party(b).position;
  });
  std::vector<int> pruned{by_pos.front()};
  if (by_pos.back() != by_pos.front()) pruned.push_back(by_pos.back());
  return sorted_by_id(inst, std::move(pruned));
}

SolveOutcome solve_cc_acp(const ElectionInstance& inst, const ObjectiveSpec& obj, int budget) {
  require_peaks(inst, "cc-acp-dp");
  if (obj.rho > 0) throw QueryError("cc-acp-dp handles mode CC; use a ccfp-acp solver");
  const ControlQuery query{Action::ACP, Mode::CC, budget};
  validate_query(inst, obj, query);
  const AddingContext ctx = make_context(inst, obj, Action::ACP);
  const int q = ctx.dec.q();
  const int limit = std::min(2, budget);

  // Best coalition gain per interval from at most 0, 1 or 2 additions.
  struct Best {
    std::int64_t delta = 0;
    std::vector<int> set;
  };
  std::vector<std::array<Best, 3>> per(q);
  std::uint64_t entries = 0;
  for (int j = 0; j < q; ++j) {
    for (const std::vector<int>& set :
         small_subsets(spoilers_in(inst, ctx.dec.coalition[j]), limit)) {
      const std::int64_t dc = addition_deltas(inst, obj, ctx, set).first;
      for (int i = static_cast<int>(set.size()); i <= 2; ++i) {
        if (dc > per[j][i].delta) per[j][i] = {dc, set};
      }
    }
    entries += 3;
  }

  constexpr std::int64_t kNoValue = std::numeric_limits<std::int64_t>::min() / 4;
  std::vector<std::vector<std::int64_t>> f(q + 1, std::vector<std::int64_t>(budget + 1, 0));
  std::vector<std::vector<int>> choice(q + 1, std::vector<int>(budget + 1, 0));
  for (int j = 1; j <= q; ++j) {
    for (int b = 0; b <= budget; ++b) {
      f[j][b] = kNoValue;
      for (int i = 0; i <= std::min(limit, b); ++i) {
        const std::int64_t v = per[j - 1][i].delta + f[j - 1][b - i];
        if (v > f[j][b]) {
          f[j][b] = v;
          choice[j][b] = i;
        }
      }
    }
  }
  entries += static_cast<std::uint64_t>(q + 1) * (budget + 1);

  const std::int64_t best_total = ctx.base_c + f[q][budget];
  const bool decision = at_least_fraction(best_total, inst.voter_count(), obj.phi);
  std::vector<int> witness;
  if (decision) {
    int b = budget;
    for (int j = q; j >= 1; --j) {
      const int i = choice[j][b];
      const std::vector<int>& set = per[j - 1][i].set;
      witness.insert(witness.end(), set.begin(), set.end());
      b -= i;
    }
  }
  SolveOutcome out = make_outcome(inst, obj, query, decision, std::move(witness), "cc-acp-dp", false);
  if (decision && out.coalition_votes != best_total) {
    throw std::logic_error("per-interval gains failed to add up under re-simulation");
  }
  out.table_entries = entries;
  return out;
}

SolveOutcome solve_ccfp_acp_contiguous(const ElectionInstance& inst, const ObjectiveSpec& obj,
                                       int budget) {
  require_peaks(inst, "ccfp-acp-contiguous");
  if (obj.rho == 0) throw QueryError("ccfp-acp-contiguous handles mode CCFP; use cc-acp-dp");
  const ControlQuery query{Action::ACP, Mode::CCFP, budget};
  validate_query(inst, obj, query);
  const AddingContext ctx = make_context(inst, obj, Action::ACP);
  if (ctx.dec.q() != 1) {
    throw QueryError("ccfp-acp-contiguous requires one coalition interval, instance has " +
                     std::to_string(ctx.dec.q()));
  }
  for (const std::vector<int>& set :
       small_subsets(spoilers_in(inst, ctx.dec.coalition[0]), std::min(2, budget))) {
    PartySet running = ctx.base;
    for (int p : set) running.add(p);
    if (evaluate_objectives(inst.tally(running), obj).ok()) {
      return make_outcome(inst, obj, query, true, set, "ccfp-acp-contiguous", false);
    }
  }
  return make_outcome(inst, obj, query, false, {}, "ccfp-acp-contiguous", false);
}

SolveOutcome solve_ccfp_acp_dp(const ElectionInstance& inst, const ObjectiveSpec& obj,
                               int budget) {
  require_peaks(inst, "ccfp-acp-dp");
  if (obj.rho == 0) throw QueryError("ccfp-acp-dp handles mode CCFP; use cc-acp-dp");
  const ControlQuery query{Action::ACP, Mode::CCFP, budget};
  validate_query(inst, obj, query);
  const AddingContext ctx = make_context(inst, obj, Action::ACP);
  return run_delta_dp(inst, obj, query, ctx, ctx.dec.coalition, "ccfp-acp-dp");
}

SolveOutcome solve_ccfp_aop_contiguous(const ElectionInstance& inst, const ObjectiveSpec& obj,
                                       int budget) {
  require_peaks(inst, "ccfp-aop-contiguous");
  const ControlQuery query{Action::AOP, obj.rho > 0 ? Mode::CCFP : Mode::CC, budget};
  validate_query(inst, obj, query);
  if (obj.rho == 0) return immune_outcome(inst, obj, query);
  const AddingContext ctx = make_context(inst, obj, Action::AOP);
  if (ctx.dec.q() != 1) {
    throw QueryError("ccfp-aop-contiguous requires one coalition interval, instance has " +
                     std::to_string(ctx.dec.q()));
  }

  // With one coalition interval there are two opposition flanks, and adding
  // more than one spoiler on the same flank never helps.
  const std::vector<int> left = spoilers_in(inst, ctx.dec.opposition[0]);
  const std::vector<int> right = spoilers_in(inst, ctx.dec.opposition[1]);
  std::vector<std::vector<int>> candidates;
  candidates.push_back({});
  if (budget >= 1) {
    for (int l : left) candidates.push_back({l});
    for (int r : right) candidates.push_back({r});
    if (budget >= 2) {
      for (int l : left) {
        for (int r : right) candidates.push_back(sorted_by_id(inst, {l, r}));
      }
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](const std::vector<int>& a, const std::vector<int>& b) {
                     if (a.size() != b.size()) return a.size() < b.size();
                     for (size_t i = 0; i < a.size(); ++i) {
                       if (inst.party(a[i]).id != inst.party(b[i]).id) {
                         return inst.party(a[i]).id < inst.party(b[i]).id;
                       }
                     }
                     return false;
                   });
  for (const std::vector<int>& set : candidates) {
    PartySet running = ctx.base;
    for (int p : set) running.add(p);
    if (evaluate_objectives(inst.tally(running), obj).ok()) {
      return make_outcome(inst, obj, query, true, set, "ccfp-aop-contiguous", false);
    }
  }
  return make_outcome(inst, obj, query, false, {}, "ccfp-aop-contiguous", false);
}

SolveOutcome solve_ccfp_aop_dp(const ElectionInstance& inst, const ObjectiveSpec& obj,
                               int budget) {
  require_peaks(inst, "ccfp-aop-dp");
  const ControlQuery query{Action::AOP, obj.rho > 0 ? Mode::CCFP : Mode::CC, budget};
  validate_query(inst, obj, query);
  if (obj.rho == 0) return immune_outcome(inst, obj, query);
  const AddingContext ctx = make_context(inst, obj, Action::AOP);
  return run_delta_dp(inst, obj, query, ctx, ctx.dec.opposition, "ccfp-aop-dp");
}

}  // namespace coalctrl
