#include "coalctrl/deleting.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "delta_dp.hpp"

namespace coalctrl {

namespace {

struct DeletingContext {
  IntervalDecomposition dec;
  std::int64_t base_c = 0;
  std::int64_t base_f = 0;
};

DeletingContext make_context(const ElectionInstance& inst, const ObjectiveSpec& obj) {
  DeletingContext ctx;
  ctx.dec = decompose_intervals(inst, inst.full_set(), obj.coalition);
  const ObjectiveEval eval = evaluate_objectives(inst.tally(inst.full_set()), obj);
  ctx.base_c = eval.coalition_votes;
  ctx.base_f = eval.favored_votes;
  return ctx;
}

std::vector<int> sorted_by_id(const ElectionInstance& inst, std::vector<int> v) {
  std::sort(v.begin(), v.end(),
            [&](int a, int b) { return inst.party(a).id < inst.party(b).id; });
  return v;
}

void require_peaks(const ElectionInstance& inst, const char* solver) {
  if (!inst.is_ssp()) {
    throw QueryError(std::string(solver) + " requires a single-peaked (positioned) instance");
  }
}

std::vector<detail::DeltaOption> to_delta_options(std::vector<EndRunOption> runs) {
  std::map<std::pair<std::int64_t, std::int64_t>, std::vector<int>> dedup;
  for (EndRunOption& r : runs) {
    // runs arrive in (size, id-lex) order, so the first set per delta wins
    dedup.emplace(std::make_pair(r.coalition_delta, r.favored_delta), std::move(r.deleted));
  }
  std::vector<detail::DeltaOption> out;
  out.reserve(dedup.size());
  for (auto& [d, set] : dedup) out.push_back({d.first, d.second, std::move(set)});
  return out;
}

}  // namespace

std::vector<EndRunOption> enumerate_end_runs(const ElectionInstance& inst,
                                             const ObjectiveSpec& obj, const Interval& interval,
                                             int budget, int locations, int interval_index) {
  if (locations != 2 && locations != 4) {
    throw QueryError("end-run enumeration supports 2 or 4 locations");
  }
  const std::vector<int>& parties = interval.parties;  // ascending position
  const int t = static_cast<int>(parties.size());
  int f = -1;
  if (locations == 4) {
    for (int i = 0; i < t; ++i) {
      if (parties[i] == obj.favored) f = i;
    }
    if (f < 0) {
      throw QueryError("four-location end runs need the favored party inside the interval");
    }
  }

  const PartySet everyone = inst.full_set();
  const ObjectiveEval base = evaluate_objectives(inst.tally(everyone), obj);

  std::vector<EndRunOption> out;
  std::set<std::vector<int>> seen;
  auto emit = [&](int a, int b, int c, int d, std::vector<int> deleted) {
    if (static_cast<int>(deleted.size()) == inst.party_count()) return;  // nobody left
    std::sort(deleted.begin(), deleted.end());
    if (!seen.insert(deleted).second) return;
    PartySet running = everyone;
    for (int p : deleted) running.remove(p);
    const ObjectiveEval eval = evaluate_objectives(inst.tally(running), obj);
    EndRunOption opt;
    opt.interval_index = interval_index;
    opt.left_run = a;
    opt.right_run = b;
    opt.favored_left = c;
    opt.favored_right = d;
    opt.deleted = sorted_by_id(inst, std::move(deleted));
    opt.coalition_delta = eval.coalition_votes - base.coalition_votes;
    opt.favored_delta = eval.favored_votes - base.favored_votes;
    out.push_back(std::move(opt));
  };

  if (locations == 2) {
    for (int a = 0; a <= std::min(budget, t); ++a) {
      for (int b = 0; a + b <= std::min(budget, t); ++b) {
        std::vector<int> deleted(parties.begin(), parties.begin() + a);
        deleted.insert(deleted.end(), parties.end() - b, parties.end());
        emit(a, b, 0, 0, std::move(deleted));
      }
    }
  } else {
    const int left_avail = f;
    const int right_avail = t - 1 - f;
    for (int a = 0; a <= std::min(budget, left_avail); ++a) {
      for (int c = 0; a + c <= budget && a + c <= left_avail; ++c) {
        for (int b = 0; a + c + b <= budget && b <= right_avail; ++b) {
          for (int d = 0; a + c + b + d <= budget && b + d <= right_avail; ++d) {
            std::vector<int> deleted(parties.begin(), parties.begin() + a);
            deleted.insert(deleted.end(), parties.begin() + (f - c), parties.begin() + f);
            deleted.insert(deleted.end(), parties.begin() + f + 1, parties.begin() + f + 1 + d);
            deleted.insert(deleted.end(), parties.end() - b, parties.end());
            emit(a, b, c, d, std::move(deleted));
          }
        }
      }
    }
  }

  std::sort(out.begin(), out.end(), [&](const EndRunOption& x, const EndRunOption& y) {
    if (x.deleted.size() != y.deleted.size()) return x.deleted.size() < y.deleted.size();
    for (size_t i = 0; i < x.deleted.size(); ++i) {
      if (x.deleted[i] != y.deleted[i]) {
        return inst.party(x.deleted[i]).id < inst.party(y.deleted[i]).id;
      }
    }
    return false;
  });
  return out;
}

SolveOutcome solve_cc_dop(const ElectionInstance& inst, const ObjectiveSpec& obj, int budget) {
  require_peaks(inst, "cc-dop-dp");
  if (obj.rho > 0) throw QueryError("cc-dop-dp handles mode CC; use a ccfp-dop solver");
  const ControlQuery query{Action::DOP, Mode::CC, budget};
  validate_query(inst, obj, query);
  const DeletingContext ctx = make_context(inst, obj);
  const int intervals = static_cast<int>(ctx.dec.opposition.size());

  // Best coalition gain per opposition interval for every sub-budget.
  struct Best {
    std::int64_t delta = 0;
    std::vector<int> set;
  };
  std::vector<std::vector<Best>> per(intervals, std::vector<Best>(budget + 1));
  std::uint64_t entries = 0;
  for (int j = 0; j < intervals; ++j) {
    const std::vector<EndRunOption> runs =
        enumerate_end_runs(inst, obj, ctx.dec.opposition[j], budget, 2, j);
    entries += runs.size();
    for (const EndRunOption& r : runs) {
      for (int i = static_cast<int>(r.deleted.size()); i <= budget; ++i) {
        if (r.coalition_delta > per[j][i].delta) per[j][i] = {r.coalition_delta, r.deleted};
      }
    }
    entries += static_cast<std::uint64_t>(budget) + 1;
  }

  constexpr std::int64_t kNoValue = std::numeric_limits<std::int64_t>::min() / 4;
  std::vector<std::vector<std::int64_t>> fdp(intervals + 1,
                                             std::vector<std::int64_t>(budget + 1, 0));
  std::vector<std::vector<int>> choice(intervals + 1, std::vector<int>(budget + 1, 0));
  for (int j = 1; j <= intervals; ++j) {
    for (int b = 0; b <= budget; ++b) {
      fdp[j][b] = kNoValue;
      for (int i = 0; i <= b; ++i) {
        const std::int64_t v = per[j - 1][i].delta + fdp[j - 1][b - i];
        if (v > fdp[j][b]) {
          fdp[j][b] = v;
          choice[j][b] = i;
        }
      }
    }
  }
  entries += static_cast<std::uint64_t>(intervals + 1) * (budget + 1);

  const std::int64_t best_total = ctx.base_c + fdp[intervals][budget];
  const bool decision = at_least_fraction(best_total, inst.voter_count(), obj.phi);
  std::vector<int> witness;
  if (decision) {
    int b = budget;
    for (int j = intervals; j >= 1; --j) {
      const int i = choice[j][b];
      const std::vector<int>& set = per[j - 1][i].set;
      witness.insert(witness.end(), set.begin(), set.end());
      b -= i;
    }
  }
  SolveOutcome out = make_outcome(inst, obj, query, decision, std::move(witness), "cc-dop-dp", false);
  if (decision && out.coalition_votes != best_total) {
    throw std::logic_error("per-interval gains failed to add up under re-simulation");
  }
  out.table_entries = entries;
  return out;
}

SolveOutcome solve_ccfp_dcp_contiguous(const ElectionInstance& inst, const ObjectiveSpec& obj,
                                       int budget) {
  require_peaks(inst, "ccfp-dcp-contiguous");
  const ControlQuery query{Action::DCP, obj.rho > 0 ? Mode::CCFP : Mode::CC, budget};
  validate_query(inst, obj, query);
  if (obj.rho == 0) return immune_outcome(inst, obj, query);
  const DeletingContext ctx = make_context(inst, obj);
  if (ctx.dec.q() != 1) {
    throw QueryError("ccfp-dcp-contiguous requires one coalition interval, instance has " +
                     std::to_string(ctx.dec.q()));
  }
  for (const EndRunOption& r :
       enumerate_end_runs(inst, obj, ctx.dec.coalition[0], budget, 4, 0)) {
    PartySet running = inst.full_set();
    for (int p : r.deleted) running.remove(p);
    if (evaluate_objectives(inst.tally(running), obj).ok()) {
      return make_outcome(inst, obj, query, true, r.deleted, "ccfp-dcp-contiguous", false);
    }
  }
  return make_outcome(inst, obj, query, false, {}, "ccfp-dcp-contiguous", false);
}

SolveOutcome solve_ccfp_dcp_dp(const ElectionInstance& inst, const ObjectiveSpec& obj,
                               int budget) {
  require_peaks(inst, "ccfp-dcp-dp");
  const ControlQuery query{Action::DCP, obj.rho > 0 ? Mode::CCFP : Mode::CC, budget};
  validate_query(inst, obj, query);
  if (obj.rho == 0) return immune_outcome(inst, obj, query);
  const DeletingContext ctx = make_context(inst, obj);

  std::uint64_t entries = 0;
  std::vector<std::vector<detail::DeltaOption>> opts;
  for (int j = 0; j < ctx.dec.q(); ++j) {
    const Interval& iv = ctx.dec.coalition[j];
    const bool holds_favored =
        std::find(iv.parties.begin(), iv.parties.end(), obj.favored) != iv.parties.end();
    opts.push_back(
        to_delta_options(enumerate_end_runs(inst, obj, iv, budget, holds_favored ? 4 : 2, j)));
    entries += opts.back().size();
  }
  detail::DeltaCombineResult res = detail::combine_delta_options(
      opts, budget, ctx.base_c, ctx.base_f, obj, inst.voter_count());
  entries += res.state_entries;
  SolveOutcome out =
      make_outcome(inst, obj, query, res.found, std::move(res.witness), "ccfp-dcp-dp", false);
  if (res.found && (out.coalition_votes != ctx.base_c + res.dc ||
                    out.favored_votes != ctx.base_f + res.df)) {
    throw std::logic_error("per-interval deltas failed to add up under re-simulation");
  }
  out.table_entries = entries;
  return out;
}

SolveOutcome solve_ccfp_dop_contiguous(const ElectionInstance& inst, const ObjectiveSpec& obj,
                                       int budget) {
  require_peaks(inst, "ccfp-dop-contiguous");
  if (obj.rho == 0) throw QueryError("ccfp-dop-contiguous handles mode CCFP; use cc-dop-dp");
  const ControlQuery query{Action::DOP, Mode::CCFP, budget};
  validate_query(inst, obj, query);
  const DeletingContext ctx = make_context(inst, obj);
  if (ctx.dec.q() != 1) {
    throw QueryError("ccfp-dop-contiguous requires one coalition interval, instance has " +
                     std::to_string(ctx.dec.q()));
  }

  const std::vector<EndRunOption> left =
      enumerate_end_runs(inst, obj, ctx.dec.opposition[0], budget, 2, 0);
  const std::vector<EndRunOption> right =
      enumerate_end_runs(inst, obj, ctx.dec.opposition[1], budget, 2, 1);

  struct Candidate {
    std::vector<int> deleted;
    std::int64_t dc = 0;
    std::int64_t df = 0;
  };
  std::vector<Candidate> candidates;
  for (const EndRunOption& l : left) {
    for (const EndRunOption& r : right) {
      if (static_cast<int>(l.deleted.size() + r.deleted.size()) > budget) continue;
      Candidate cand;
      cand.deleted = l.deleted;
      cand.deleted.insert(cand.deleted.end(), r.deleted.begin(), r.deleted.end());
      cand.deleted = sorted_by_id(inst, std::move(cand.deleted));
      cand.dc = l.coalition_delta + r.coalition_delta;
      cand.df = l.favored_delta + r.favored_delta;
      candidates.push_back(std::move(cand));
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [&](const Candidate& x, const Candidate& y) {
    if (x.deleted.size() != y.deleted.size()) return x.deleted.size() < y.deleted.size();
    for (size_t i = 0; i < x.deleted.size(); ++i) {
      if (x.deleted[i] != y.deleted[i]) {
        return inst.party(x.deleted[i]).id < inst.party(y.deleted[i]).id;
      }
    }
    return false;
  });
  for (const Candidate& cand : candidates) {
    if (!acceptable_totals(ctx.base_c + cand.dc, ctx.base_f + cand.df, obj,
                           inst.voter_count())) {
      continue;
    }
    SolveOutcome out =
        make_outcome(inst, obj, query, true, cand.deleted, "ccfp-dop-contiguous", false);
    if (out.coalition_votes != ctx.base_c + cand.dc || out.favored_votes != ctx.base_f + cand.df) {
      throw std::logic_error("flank deltas failed to add up under re-simulation");
    }
    return out;
  }
  return make_outcome(inst, obj, query, false, {}, "ccfp-dop-contiguous", false);
}

SolveOutcome solve_ccfp_dop_dp(const ElectionInstance& inst, const ObjectiveSpec& obj,
                               int budget) {
  require_peaks(inst, "ccfp-dop-dp");
  if (obj.rho == 0) throw QueryError("ccfp-dop-dp handles mode CCFP; use cc-dop-dp");
  const ControlQuery query{Action::DOP, Mode::CCFP, budget};
  validate_query(inst, obj, query);
  const DeletingContext ctx = make_context(inst, obj);

  std::uint64_t entries = 0;
  std::vector<std::vector<detail::DeltaOption>> opts;
  for (size_t j = 0; j < ctx.dec.opposition.size(); ++j) {
    opts.push_back(to_delta_options(
        enumerate_end_runs(inst, obj, ctx.dec.opposition[j], budget, 2, static_cast<int>(j))));
    entries += opts.back().size();
  }
  detail::DeltaCombineResult res = detail::combine_delta_options(
      opts, budget, ctx.base_c, ctx.base_f, obj, inst.voter_count());
  entries += res.state_entries;
  SolveOutcome out =
      make_outcome(inst, obj, query, res.found, std::move(res.witness), "ccfp-dop-dp", false);
  if (res.found && (out.coalition_votes != ctx.base_c + res.dc ||
                    out.favored_votes != ctx.base_f + res.df)) {
    throw std::logic_error("per-interval deltas failed to add up under re-simulation");
  }
  out.table_entries = entries;
  return out;
}

}  // namespace coalctrl
