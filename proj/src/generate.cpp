#include "coalctrl/generate.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <utility>

#include "coalctrl/ssp.hpp"

namespace coalctrl {
namespace {

constexpr int kPositionGrid = 1009;  // prime; positions are c/1009
constexpr int kPeakGrid = 8 * kPositionGrid;

/// Bounded draw with rejection, so the result only depends on the standard
/// mt19937_64 output sequence (std::uniform_int_distribution is
/// implementation-defined and would break cross-platform determinism).
std::uint64_t next_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t rem = std::numeric_limits<std::uint64_t>::max() % bound;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - rem;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

bool chance(std::mt19937_64& rng, int permille) {
  return next_below(rng, 1000) < static_cast<std::uint64_t>(permille);
}

void validate_params(const GenParams& p) {
  if (p.kind != "ssp" && p.kind != "general") {
    throw InstanceError("generate: kind must be 'ssp' or 'general'");
  }
  if (p.m < 1 || p.m > 64) throw InstanceError("generate: m out of range [1,64]");
  if (p.n < 1 || p.n > 1'000'000) throw InstanceError("generate: n out of range [1,1e6]");
  if (p.k < 0 || p.k > p.m) throw InstanceError("generate: k out of range [0,m]");
  if (p.q_target < 0) throw InstanceError("generate: q_target must be nonnegative");
  if (p.coalition_permille < 0 || p.coalition_permille > 1000 || p.spoiler_permille < 0 ||
      p.spoiler_permille > 1000) {
    throw InstanceError("generate: densities are permille values in [0,1000]");
  }
}

/// Coalition pattern along the spectrum with exactly q runs: q coalition
/// runs, q-1 separators, two optional opposition flanks; leftover parties
/// are sprinkled over all slots.
std::vector<char> pattern_with_q(std::mt19937_64& rng, int m, int q) {
  const int slots = 2 * q + 1;          // flank, C, sep, C, ..., C, flank
  std::vector<int> len(slots, 0);
  for (int s = 1; s + 1 < slots; ++s) len[s] = 1;  // runs and separators start at 1
  int leftover = m - (2 * q - 1);
  while (leftover > 0) {
    len[next_below(rng, slots)] += 1;
    --leftover;
  }
  std::vector<char> coalition;
  coalition.reserve(m);
  for (int s = 0; s < slots; ++s) {
    const bool is_coalition_slot = s % 2 == 1;
    coalition.insert(coalition.end(), len[s], is_coalition_slot ? 1 : 0);
  }
  return coalition;
}

}  // namespace

GenResult generate_random(const GenParams& params) {
  validate_params(params);
  std::mt19937_64 rng(params.seed);
  const int m = params.m;
  const bool ssp = params.kind == "ssp";
  const bool adding = is_adding(params.action);

  // --- roles along the declaration order (== position order for ssp) ---
  std::vector<char> coalition(m, 0);
  if (ssp && params.q_target > 0) {
    const int q = std::min(params.q_target, (m + 1) / 2);
    coalition = pattern_with_q(rng, m, q);
  } else {
    for (int p = 0; p < m; ++p) coalition[p] = chance(rng, params.coalition_permille);
    if (std::find(coalition.begin(), coalition.end(), char(1)) == coalition.end()) {
      coalition[static_cast<int>(next_below(rng, m))] = 1;
    }
  }

  std::vector<char> spoiler(m, 0);
  if (adding) {
    const bool side = acts_on_coalition(params.action);
    for (int p = 0; p < m; ++p) {
      if (bool(coalition[p]) == side) spoiler[p] = chance(rng, params.spoiler_permille);
    }
    auto permanent_ok = [&]() {
      bool any_permanent = false;
      bool permanent_coalition = false;
      for (int p = 0; p < m; ++p) {
        if (!spoiler[p]) {
          any_permanent = true;
          if (coalition[p]) permanent_coalition = true;
        }
      }
      return any_permanent && (params.mode == Mode::CC || permanent_coalition);
    };
    // Repair: keep at least one permanent party, and a permanent coalition
    // party when a favored party will be needed.
    for (int p = 0; p < m && !permanent_ok(); ++p) {
      if (spoiler[p] && (params.mode == Mode::CC || coalition[p])) spoiler[p] = 0;
    }
    // Repair: with a positive budget, give the action something to add when
    // that is possible without undoing the anchors above.
    if (params.k > 0) {
      bool pool_empty = true;
      for (int p = 0; p < m; ++p) {
        if (spoiler[p] && bool(coalition[p]) == side) pool_empty = false;
      }
      for (int p = m - 1; p >= 0 && pool_empty; --p) {
        if (bool(coalition[p]) != side || spoiler[p]) continue;
        spoiler[p] = 1;
        if (permanent_ok()) {
          pool_empty = false;
        } else {
          spoiler[p] = 0;
        }
      }
    }
  }

  // --- parties ---
  std::vector<Party> parties(m);
  if (ssp) {
    std::set<int> taken;
    std::vector<int> numerators;
    while (static_cast<int>(numerators.size()) < m) {
      const int c = 1 + static_cast<int>(next_below(rng, kPositionGrid - 1));
      if (taken.insert(c).second) numerators.push_back(c);
    }
    std::sort(numerators.begin(), numerators.end());
    for (int p = 0; p < m; ++p) parties[p].position = Rat(numerators[p], kPositionGrid);
  }
  for (int p = 0; p < m; ++p) {
    parties[p].id = "p" + std::to_string(p + 1);
    parties[p].is_coalition = coalition[p] != 0;
    parties[p].is_spoiler = spoiler[p] != 0;
  }

  // --- voters ---
  std::vector<VoterBlock> blocks;
  if (ssp) {
    std::vector<std::string> all_ids;
    for (const Party& p : parties) all_ids.push_back(p.id);
    const ElectionInstance skeleton(parties, {VoterBlock{std::move(all_ids), std::nullopt, 1}});
    const SspStructure s = build_structure(skeleton);
    std::map<Rat, std::int64_t> peaks;
    for (std::int64_t v = 0; v < params.n; ++v) {
      while (true) {
        const Rat peak(1 + static_cast<int>(next_below(rng, kPeakGrid - 1)), kPeakGrid);
        if (std::binary_search(s.dividers.begin(), s.dividers.end(), peak)) continue;
        peaks[peak] += 1;
        break;
      }
    }
    for (const auto& [peak, count] : peaks) {
      blocks.push_back(VoterBlock{{}, peak, count});
    }
  } else {
    std::map<std::vector<std::string>, std::int64_t> orders;
    for (std::int64_t v = 0; v < params.n; ++v) {
      std::vector<int> perm(m);
      for (int p = 0; p < m; ++p) perm[p] = p;
      for (int i = m - 1; i > 0; --i) {
        std::swap(perm[i], perm[next_below(rng, i + 1)]);
      }
      std::vector<std::string> order;
      order.reserve(m);
      for (int p : perm) order.push_back(parties[p].id);
      orders[std::move(order)] += 1;
    }
    for (const auto& [order, count] : orders) {
      blocks.push_back(VoterBlock{order, std::nullopt, count});
    }
  }

  ElectionInstance inst(std::move(parties), std::move(blocks));

  // --- thresholds near the baseline tally, so answers land on both sides ---
  ControlQuery query{params.action, params.mode, params.k};
  const PartySet baseline_running = is_adding(params.action) ? inst.permanent_set()
                                                             : inst.full_set();
  const Tally baseline = inst.tally(baseline_running);
  std::int64_t base_c = 0;
  for (int p = 0; p < inst.party_count(); ++p) {
    if (inst.party(p).is_coalition) base_c += baseline.votes[p];
  }

  const std::int64_t lo = std::max<std::int64_t>(1, base_c - 2);
  const std::int64_t hi = std::min<std::int64_t>(params.n, base_c + 2 + 3 * params.k);
  const std::int64_t t = lo >= hi ? lo : lo + static_cast<std::int64_t>(
                                             next_below(rng, hi - lo + 1));
  const Rat phi(t, params.n);

  Rat rho(0);
  std::optional<std::string> favored_id;
  if (params.mode == Mode::CCFP) {
    std::vector<int> anchors;
    for (int p = 0; p < inst.party_count(); ++p) {
      if (inst.party(p).is_coalition && !inst.party(p).is_spoiler) anchors.push_back(p);
    }
    const int favored = anchors[next_below(rng, anchors.size())];
    favored_id = inst.party(favored).id;
    if (base_c == 0) {
      rho = Rat(1, 2);
    } else {
      const std::int64_t delta =
          static_cast<std::int64_t>(next_below(rng, params.k + 3)) - 1;
      const std::int64_t num =
          std::clamp<std::int64_t>(baseline.votes[favored] + delta, 1, base_c);
      rho = Rat(num, base_c);
    }
  }

  ObjectiveSpec obj = make_objective(inst, phi, rho, favored_id);
  validate_query(inst, obj, query);
  const int achieved_q = ssp ? coalition_interval_count(inst, obj, params.action) : 0;
  return GenResult{ProblemInstance{std::move(inst), std::move(obj), query}, achieved_q};
}

}  // namespace coalctrl
