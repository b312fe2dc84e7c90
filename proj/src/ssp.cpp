#include "coalctrl/ssp.hpp"

#include <algorithm>

namespace coalctrl {

namespace {

Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

}  // namespace

SspStructure build_structure(const ElectionInstance& inst) {
  if (!inst.fully_positioned()) {
    throw InstanceError("band structure requires a position on every party");
  }
  SspStructure s;
  s.dividers.push_back(Rat(0));
  s.dividers.push_back(Rat(1));
  const int m = inst.party_count();
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      s.dividers.push_back((*inst.party(i).position + *inst.party(j).position) / 2);
    }
  }
  std::sort(s.dividers.begin(), s.dividers.end());
  s.dividers.erase(std::unique(s.dividers.begin(), s.dividers.end()), s.dividers.end());

  for (size_t d = 0; d + 1 < s.dividers.size(); ++d) {
    Band band;
    band.lo = s.dividers[d];
    band.hi = s.dividers[d + 1];
    const Rat mid = (band.lo + band.hi) / 2;
    band.order.resize(m);
    for (int p = 0; p < m; ++p) band.order[p] = p;
    std::sort(band.order.begin(), band.order.end(), [&](int a, int b) {
      return abs_rat(mid - *inst.party(a).position) < abs_rat(mid - *inst.party(b).position);
    });
    // Inside an open band no pairwise midpoint is crossed, so the order is
    // strict; equal distances would mean the midpoint sits on a divider.
    for (int p = 0; p + 1 < m; ++p) {
      if (abs_rat(mid - *inst.party(band.order[p]).position) ==
          abs_rat(mid - *inst.party(band.order[p + 1]).position)) {
        throw std::logic_error("band midpoint landed on a divider");
      }
    }
    s.bands.push_back(std::move(band));
  }
  return s;
}

int band_of(const SspStructure& s, const Rat& peak) {
  auto it = std::upper_bound(s.dividers.begin(), s.dividers.end(), peak);
  if (it != s.dividers.begin() && *(it - 1) == peak) {
    throw TieError("peak " + rational_str(peak) + " lies exactly on a divider");
  }
  if (it == s.dividers.begin() || it == s.dividers.end()) {
    throw InstanceError("peak " + rational_str(peak) + " is outside [0,1]");
  }
  return static_cast<int>(it - s.dividers.begin()) - 1;
}

CompactProfile compact_profile(const SspStructure& s, const std::vector<VoterBlock>& blocks) {
  CompactProfile profile;
  profile.counts.assign(s.bands.size(), 0);
  for (const VoterBlock& block : blocks) {
    if (!block.peak) throw InstanceError("compact profiles require peak-based voters");
    if (block.count == 0) continue;
    profile.counts[band_of(s, *block.peak)] += block.count;
  }
  return profile;
}

CompactProfile compact_from_extensive(const ElectionInstance& inst, const SspStructure& s) {
  if (!inst.is_ssp()) throw InstanceError("compact profiles require an SSP instance");
  return compact_profile(s, inst.voters());
}

std::vector<VoterBlock> extensive_from_compact(const CompactProfile& profile,
                                               const SspStructure& s) {
  if (profile.counts.size() != s.bands.size()) {
    throw InstanceError("compact profile has " + std::to_string(profile.counts.size()) +
                        " bands, structure has " + std::to_string(s.bands.size()));
  }
  std::vector<VoterBlock> blocks;
  for (size_t b = 0; b < profile.counts.size(); ++b) {
    if (profile.counts[b] < 0) throw InstanceError("compact profile has a negative count");
    if (profile.counts[b] == 0) continue;
    VoterBlock block;
    block.peak = (s.bands[b].lo + s.bands[b].hi) / 2;
    block.count = profile.counts[b];
    blocks.push_back(std::move(block));
  }
  return blocks;
}

IntervalDecomposition decompose_intervals(const ElectionInstance& inst, const PartySet& universe,
                                          const PartySet& coalition) {
  IntervalDecomposition dec;
  dec.opposition.emplace_back();  // left flank
  bool in_coalition_run = false;
  bool any_coalition = false;
  for (int p : inst.position_order()) {
    if (!universe.contains(p)) continue;
    const bool c = coalition.contains(p);
    if (c) {
      any_coalition = true;
      if (!in_coalition_run) {
        dec.coalition.emplace_back();
        in_coalition_run = true;
      }
      dec.coalition.back().parties.push_back(p);
    } else {
      if (in_coalition_run) {
        dec.opposition.emplace_back();
        in_coalition_run = false;
      }
      dec.opposition.back().parties.push_back(p);
    }
  }
  if (in_coalition_run) dec.opposition.emplace_back();  // right flank
  if (!any_coalition) {
    throw QueryError("interval decomposition: no coalition party in the running universe");
  }
  return dec;
}

PartySet action_universe(const ElectionInstance& inst, const ObjectiveSpec& obj, Action action) {
  if (!is_adding(action)) return inst.full_set();
  PartySet universe = inst.permanent_set();
  for (int p = 0; p < inst.party_count(); ++p) {
    if (inst.party(p).is_spoiler &&
        obj.coalition.contains(p) == acts_on_coalition(action)) {
      universe.add(p);
    }
  }
  return universe;
}

int coalition_interval_count(const ElectionInstance& inst, const ObjectiveSpec& obj,
                             Action action) {
  return decompose_intervals(inst, action_universe(inst, obj, action), obj.coalition).q();
}

}  // namespace coalctrl
