#include "coalctrl/oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace coalctrl {

namespace {

// Saturating count of sum_{i<=max_size} C(pool, i); clamps at limit + 1.
std::uint64_t count_subsets(std::uint64_t pool, std::uint64_t max_size, std::uint64_t limit) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(pool, 0)
  for (std::uint64_t i = 0;; ++i) {
    if (binom > limit || total > limit - binom) return limit + 1;
    total += binom;
    if (i == max_size || i == pool) break;
    // C(pool, i+1) = C(pool, i) * (pool - i) / (i + 1), exact at every step.
    const std::uint64_t factor = pool - i;
    if (binom > std::numeric_limits<std::uint64_t>::max() / factor) return limit + 1;
    binom = binom * factor / (i + 1);
  }
  return total;
}

// Visits subsets of `pool` in (size, lexicographic) order, sizes 0..max_size.
// Stops early when visit returns true; returns whether that happened.
template <typename Visit>
bool for_each_subset(const std::vector<int>& pool, int max_size, Visit visit) {
  const int p = static_cast<int>(pool.size());
  max_size = std::min(max_size, p);
  std::vector<int> chosen;
  for (int size = 0; size <= max_size; ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      chosen.clear();
      for (int i : idx) chosen.push_back(pool[i]);
      if (visit(chosen)) return true;
      int pos = size - 1;
      while (pos >= 0 && idx[pos] == p - size + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return false;
}

}  // namespace

SolveOutcome solve_exhaustive(const ElectionInstance& inst, const ObjectiveSpec& obj,
                              const ControlQuery& query, const OracleOptions& opts) {
  validate_query(inst, obj, query);
  const std::vector<int> pool = candidate_pool(inst, obj, query);
  const int max_size = std::min<int>(query.budget, static_cast<int>(pool.size()));
  const std::uint64_t total = count_subsets(pool.size(), max_size, opts.cap);
  if (total > opts.cap) {
    throw CapacityError("enumeration needs more than " + std::to_string(opts.cap) +
                        " subsets (pool " + std::to_string(pool.size()) + ", budget " +
                        std::to_string(query.budget) + ")");
  }

  std::vector<int> witness;
  const bool deleting = !is_adding(query.action);
  const bool found = for_each_subset(pool, max_size, [&](const std::vector<int>& chosen) {
    if (deleting && static_cast<int>(chosen.size()) == inst.party_count()) {
      return false;  // would empty the running set; not a legal action
    }
    const PartySet running = apply_action(inst, obj, query, chosen);
    if (evaluate_objectives(inst.tally(running), obj).ok()) {
      witness = chosen;
      return true;
    }
    return false;
  });
  return make_outcome(inst, obj, query, found, std::move(witness), "oracle", false);
}

ImmunityReport verify_immunity(const ElectionInstance& inst, const ObjectiveSpec& obj,
                               const ControlQuery& query, const OracleOptions& opts) {
  validate_query(inst, obj, query);
  const bool immune_shape = query.action == Action::AOP || query.action == Action::DCP;
  if (query.mode != Mode::CC || !immune_shape) {
    throw QueryError("immunity check applies to AOP and DCP under mode CC");
  }
  const std::vector<int> pool = candidate_pool(inst, obj, query);
  if (pool.size() >= 63 || (std::uint64_t(1) << pool.size()) > opts.cap) {
    throw CapacityError("immunity check needs 2^" + std::to_string(pool.size()) +
                        " subsets, cap is " + std::to_string(opts.cap));
  }

  ImmunityReport report;
  const ControlQuery unbounded{query.action, query.mode, static_cast<int>(pool.size())};
  report.baseline_coalition =
      evaluate_objectives(inst.tally(default_running(inst, unbounded)), obj).coalition_votes;
  report.max_coalition = report.baseline_coalition;  // from the empty set
  for_each_subset(pool, static_cast<int>(pool.size()), [&](const std::vector<int>& chosen) {
    ++report.subsets_checked;
    if (static_cast<int>(chosen.size()) == inst.party_count()) return false;
    const PartySet running = apply_action(inst, obj, unbounded, chosen);
    const std::int64_t votes = evaluate_objectives(inst.tally(running), obj).coalition_votes;
    if (votes > report.max_coalition) {
      report.max_coalition = votes;
      report.best_set = chosen;
    }
    return false;
  });
  report.immune = report.max_coalition <= report.baseline_coalition;
  return report;
}

}  // namespace coalctrl
