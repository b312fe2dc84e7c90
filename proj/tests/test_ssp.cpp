#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "coalctrl/generate.hpp"
#include "coalctrl/model.hpp"
#include "coalctrl/ssp.hpp"
#include "helpers.hpp"

using namespace coalctrl;
using namespace testutil;

namespace {

/// Full preference order implied by a peak, derived independently of the band
/// machinery by sorting parties on exact distance.
std::vector<int> order_from_peak(const ElectionInstance& inst, const Rat& peak) {
  std::vector<int> order(inst.party_count());
  for (int p = 0; p < inst.party_count(); ++p) order[p] = p;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    Rat da = abs(*inst.party(a).position - peak);
    Rat db = abs(*inst.party(b).position - peak);
    if (da != db) return da < db;
    return a < b;  // callers only use peaks without exact ties
  });
  return order;
}

ElectionInstance three_party_line() {
  return ElectionInstance({party_at("a", "0", true), party_at("b", "1/2", false),
                           party_at("c", "1", true)},
                          {peak_block("1/8", 1)});
}

}  // namespace

TEST_CASE("dividers and bands for three evenly spaced parties") {
  ElectionInstance inst = three_party_line();
  SspStructure s = build_structure(inst);

  // Pair midpoints 1/4, 1/2, 3/4 plus the ends.
  REQUIRE(s.dividers.size() == 5);
  CHECK(s.dividers[0] == Rat(0));
  CHECK(s.dividers[1] == Rat(1, 4));
  CHECK(s.dividers[2] == Rat(1, 2));
  CHECK(s.dividers[3] == Rat(3, 4));
  CHECK(s.dividers[4] == Rat(1));
  REQUIRE(s.bands.size() == 4);

  const int a = inst.index_of("a"), b = inst.index_of("b"), c = inst.index_of("c");
  CHECK(s.bands[0].order == std::vector<int>{a, b, c});
  CHECK(s.bands[1].order == std::vector<int>{b, a, c});
  CHECK(s.bands[2].order == std::vector<int>{b, c, a});
  CHECK(s.bands[3].order == std::vector<int>{c, b, a});
}

TEST_CASE("band lookup rejects peaks on dividers") {
  ElectionInstance inst = three_party_line();
  SspStructure s = build_structure(inst);
  CHECK(band_of(s, Rat(1, 8)) == 0);
  CHECK(band_of(s, Rat(3, 8)) == 1);
  CHECK(band_of(s, Rat(5, 8)) == 2);
  CHECK(band_of(s, Rat(9, 10)) == 3);
  CHECK_THROWS_AS(band_of(s, Rat(1, 4)), TieError);
  CHECK_THROWS_AS(band_of(s, Rat(1, 2)), TieError);
  CHECK_THROWS_AS(band_of(s, Rat(0)), TieError);  // spectrum end is a divider
  CHECK_THROWS_AS(band_of(s, Rat(1)), TieError);
}

TEST_CASE("every band order matches sorting by distance, and bands differ") {
  for (int trial = 0; trial < 40; ++trial) {
    GenParams params = fuzz_params(Action::ACP, Mode::CC, 31337, trial);
    params.m = 3 + trial % 6;
    GenResult gen = generate_random(params);
    const ElectionInstance& inst = gen.problem.instance;
    SspStructure s = build_structure(inst);

    std::set<std::vector<int>> seen;
    for (const Band& band : s.bands) {
      // Sample the midpoint of the band: strictly inside, so no exact ties.
      Rat mid = (band.lo + band.hi) / 2;
      CHECK(band.order == order_from_peak(inst, mid));
      CHECK(seen.insert(band.order).second);  // adjacent bands never repeat
    }
    // Type bound: distinct voter orders <= m^2 + 1.
    const int m = inst.party_count();
    CHECK(static_cast<int>(s.bands.size()) <= m * (m + 1) / 2 + 1);
    CHECK(static_cast<int>(seen.size()) <= m * m + 1);
  }
}

TEST_CASE("compact profile round-trips tallies over every running set") {
  for (int trial = 0; trial < 25; ++trial) {
    GenParams params = fuzz_params(Action::DCP, Mode::CCFP, 99, trial);
    params.m = 3 + trial % 4;  // keep 2^m small
    params.n = 5 + trial % 20;
    GenResult gen = generate_random(params);
    const ElectionInstance& inst = gen.problem.instance;
    const int m = inst.party_count();

    SspStructure s = build_structure(inst);
    CompactProfile profile = compact_from_extensive(inst, s);

    std::int64_t total = 0;
    for (std::int64_t c : profile.counts) total += c;
    CHECK(total == inst.voter_count());

    ElectionInstance back(inst.parties(), extensive_from_compact(profile, s));
    CHECK(back.voter_count() == inst.voter_count());

    for (unsigned mask = 1; mask < (1u << m); ++mask) {
      PartySet running(m);
      for (int p = 0; p < m; ++p)
        if (mask & (1u << p)) running.add(p);
      Tally t1 = tally(inst, running);
      Tally t2 = tally(back, running);
      CHECK(t1.votes == t2.votes);
    }
  }
}

TEST_CASE("interval decomposition alternates and counts coalition runs") {
  // Pattern along the spectrum: C C O C O O  ->  q = 2 coalition intervals,
  // 3 opposition slots with the left flank empty.
  ElectionInstance inst({party_at("c1", "1/10", true), party_at("c2", "2/10", true),
                         party_at("o1", "4/10", false), party_at("c3", "6/10", true),
                         party_at("o2", "8/10", false), party_at("o3", "9/10", false)},
                        {peak_block("1/7", 1)});
  ObjectiveSpec obj = make_objective(inst, Rat(1, 2), Rat(0), std::nullopt);

  IntervalDecomposition d = decompose_intervals(inst, inst.full_set(), obj.coalition);
  REQUIRE(d.q() == 2);
  REQUIRE(d.opposition.size() == 3);
  CHECK(d.opposition[0].parties.empty());  // left flank
  CHECK(d.coalition[0].parties ==
        std::vector<int>{inst.index_of("c1"), inst.index_of("c2")});
  CHECK(d.opposition[1].parties == std::vector<int>{inst.index_of("o1")});
  CHECK(d.coalition[1].parties == std::vector<int>{inst.index_of("c3")});
  CHECK(d.opposition[2].parties ==
        std::vector<int>{inst.index_of("o2"), inst.index_of("o3")});

  // Restricting the universe can merge runs: drop o1 and the two coalition
  // intervals become one.
  PartySet no_o1 = inst.full_set();
  no_o1.remove(inst.index_of("o1"));
  IntervalDecomposition d2 = decompose_intervals(inst, no_o1, obj.coalition);
  CHECK(d2.q() == 1);
  CHECK(d2.coalition[0].parties.size() == 3);

  // A universe without any coalition party is not a decomposable query.
  PartySet opp_only(inst.party_count());
  opp_only.add(inst.index_of("o1"));
  opp_only.add(inst.index_of("o2"));
  CHECK_THROWS_AS(decompose_intervals(inst, opp_only, obj.coalition), QueryError);
}

TEST_CASE("action universe matches the acting side") {
  ElectionInstance inst({party_at("cp", "1/10", true, false),
                         party_at("cs", "3/10", true, true),
                         party_at("op", "6/10", false, false),
                         party_at("os", "9/10", false, true)},
                        {peak_block("1/8", 2)});
  ObjectiveSpec obj = make_objective(inst, Rat(1, 2), Rat(0), std::nullopt);

  PartySet acp = action_universe(inst, obj, Action::ACP);
  CHECK(acp.contains(inst.index_of("cp")));
  CHECK(acp.contains(inst.index_of("cs")));
  CHECK(acp.contains(inst.index_of("op")));
  CHECK_FALSE(acp.contains(inst.index_of("os")));  // opposition spoiler never enters

  PartySet aop = action_universe(inst, obj, Action::AOP);
  CHECK(aop.contains(inst.index_of("os")));
  CHECK_FALSE(aop.contains(inst.index_of("cs")));

  // Deleting variants see every party.
  CHECK(action_universe(inst, obj, Action::DCP) == inst.full_set());
  CHECK(action_universe(inst, obj, Action::DOP) == inst.full_set());
}

TEST_CASE("generated instances hit the requested coalition interval count") {
  for (int q = 1; q <= 3; ++q) {
    GenParams params;
    params.kind = "ssp";
    params.m = 7;
    params.n = 12;
    params.k = 1;
    params.q_target = q;
    params.action = Action::ACP;
    params.mode = Mode::CC;
    params.seed = 4242 + static_cast<std::uint64_t>(q);
    GenResult gen = generate_random(params);
    CHECK(gen.achieved_q == q);
    CHECK(coalition_interval_count(gen.problem.instance, gen.problem.objective,
                                   gen.problem.query.action) == q);
  }
}
