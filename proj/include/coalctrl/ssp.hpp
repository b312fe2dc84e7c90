#pragma once

#include <cstdint>
#include <vector>

#include "coalctrl/model.hpp"

namespace coalctrl {

/// Open interval between two consecutive dividers. Every peak inside induces
/// the same strict preference order over all parties.
struct Band {
  Rat lo, hi;
  std::vector<int> order;  // party indices, best first
};

/// Midpoints of all distinct party-position pairs plus the spectrum ends.
/// Crossing a divider is the only way a voter's pairwise comparison flips.
struct SspStructure {
  std::vector<Rat> dividers;  // sorted, unique, first = 0, last = 1
  std::vector<Band> bands;    // dividers.size() - 1 entries
};

/// Requires a position on every party. Band count is at most
/// m(m+1)/2 + 1, so distinct voter types are at most m^2 + 1.
SspStructure build_structure(const ElectionInstance& inst);

/// Index of the band strictly containing `peak`. A peak sitting exactly on a
/// divider has no band and raises TieError.
int band_of(const SspStructure& s, const Rat& peak);

/// Voter counts per band; positionally equivalent to the extensive profile.
struct CompactProfile {
  std::vector<std::int64_t> counts;
};

CompactProfile compact_profile(const SspStructure& s, const std::vector<VoterBlock>& blocks);
CompactProfile compact_from_extensive(const ElectionInstance& inst, const SspStructure& s);

/// Materializes one peak block per nonempty band, at the band midpoint.
std::vector<VoterBlock> extensive_from_compact(const CompactProfile& profile,
                                               const SspStructure& s);

/// Maximal run of same-side parties, ascending by position.
struct Interval {
  std::vector<int> parties;
};

/// Alternating coalition/opposition runs along the spectrum, restricted to
/// `universe`. With q coalition intervals there are q+1 opposition slots;
/// the outer two (index 0 and q) may be empty.
struct IntervalDecomposition {
  std::vector<Interval> coalition;
  std::vector<Interval> opposition;

  int q() const { return static_cast<int>(coalition.size()); }
};

IntervalDecomposition decompose_intervals(const ElectionInstance& inst, const PartySet& universe,
                                          const PartySet& coalition);

/// Parties that take part in the spectrum for a given action: permanent ones
/// plus the spoilers the action may add. Deleting variants use everyone.
PartySet action_universe(const ElectionInstance& inst, const ObjectiveSpec& obj, Action action);

/// Number of coalition intervals the relevant solvers would see.
int coalition_interval_count(const ElectionInstance& inst, const ObjectiveSpec& obj,
                             Action action);

}  // namespace coalctrl
