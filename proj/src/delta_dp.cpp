#include "delta_dp.hpp"

#include <map>

namespace coalctrl::detail {

namespace {

struct StateKey {
  std::int64_t dc = 0;
  std::int64_t df = 0;
  auto operator<=>(const StateKey&) const = default;
};

struct StateVal {
  int used = 0;
  StateKey prev;
  int opt = -1;
};

}  // namespace

DeltaCombineResult combine_delta_options(const std::vector<std::vector<DeltaOption>>& options,
                                         int budget, std::int64_t base_c, std::int64_t base_f,
                                         const ObjectiveSpec& obj, std::int64_t total_voters) {
  DeltaCombineResult result;
  std::vector<std::map<StateKey, StateVal>> levels(options.size() + 1);
  levels[0].emplace(StateKey{0, 0}, StateVal{0, {}, -1});
  for (size_t j = 0; j < options.size(); ++j) {
    for (const auto& [key, val] : levels[j]) {
      for (size_t oi = 0; oi < options[j].size(); ++oi) {
        const DeltaOption& op = options[j][oi];
        const int used = val.used + static_cast<int>(op.set.size());
        if (used > budget) continue;
        const StateKey next{key.dc + op.dc, key.df + op.df};
        auto it = levels[j + 1].find(next);
        if (it == levels[j + 1].end() || it->second.used > used) {
          levels[j + 1][next] = {used, key, static_cast<int>(oi)};
        }
      }
    }
    result.state_entries += levels[j + 1].size();
  }

  for (const auto& [key, val] : levels.back()) {
    if (!acceptable_totals(base_c + key.dc, base_f + key.df, obj, total_voters)) continue;
    result.found = true;
    result.dc = key.dc;
    result.df = key.df;
    StateKey cur = key;
    for (size_t j = options.size(); j > 0; --j) {
      const StateVal& v = levels[j].at(cur);
      if (v.opt >= 0) {
        const std::vector<int>& set = options[j - 1][v.opt].set;
        result.witness.insert(result.witness.end(), set.begin(), set.end());
      }
      cur = v.prev;
    }
    break;
  }
  return result;
}

}  // namespace coalctrl::detail
