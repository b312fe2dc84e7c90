#include <doctest.h>

#include <set>
#include <vector>

#include "coalctrl/deleting.hpp"
#include "coalctrl/generate.hpp"
#include "coalctrl/oracle.hpp"
#include "helpers.hpp"

using namespace coalctrl;
using namespace testutil;

namespace {

std::vector<int> run_slice(const std::vector<int>& parties, int from, int len) {
  return std::vector<int>(parties.begin() + from, parties.begin() + from + len);
}

}  // namespace

TEST_CASE("end-run enumeration covers exactly the anchored patterns") {
  ElectionInstance inst({party_at("c1", "5/100", true), party_at("o1", "30/100", false),
                         party_at("o2", "50/100", false), party_at("o3", "70/100", false),
                         party_at("c2", "95/100", true)},
                        {peak_block("6/100", 2), peak_block("19/100", 1),
                         peak_block("51/100", 1), peak_block("71/100", 1),
                         peak_block("94/100", 2)});
  ObjectiveSpec obj = make_objective(inst, Rat(1, 2), Rat(0), std::nullopt);
  IntervalDecomposition dec = decompose_intervals(inst, inst.full_set(), obj.coalition);
  REQUIRE(dec.q() == 2);
  const Interval& opp = dec.opposition[1];
  REQUIRE(opp.parties.size() == 3);

  // Budget 2 over 3 parties: (left,right) runs (0,0) (1,0) (0,1) (2,0) (1,1) (0,2).
  std::vector<EndRunOption> two = enumerate_end_runs(inst, obj, opp, 2, 2, 1);
  CHECK(two.size() == 6);
  // Budget 3 adds only the full deletion, once (all four splits collapse).
  std::vector<EndRunOption> three = enumerate_end_runs(inst, obj, opp, 3, 2, 1);
  CHECK(three.size() == 7);
  // Options arrive deduplicated, sorted by size.
  std::set<std::vector<int>> seen;
  for (size_t i = 0; i < three.size(); ++i) {
    CHECK(seen.insert(three[i].deleted).second);
    if (i > 0) CHECK(three[i - 1].deleted.size() <= three[i].deleted.size());
  }
  // The empty pattern reports zero deltas.
  CHECK(three[0].deleted.empty());
  CHECK(three[0].coalition_delta == 0);
  CHECK(three[0].favored_delta == 0);

  // Deleting the run anchored at the left end hands its voter to c1's side.
  for (const EndRunOption& r : two) {
    if (r.left_run == 1 && r.right_run == 0) {
      CHECK(r.deleted == std::vector<int>{inst.index_of("o1")});
      CHECK(r.coalition_delta == 1);  // the 31/100 voter crosses to c1
    }
  }
}

TEST_CASE("four-location runs shield the favored party and dedupe overlaps") {
  // Coalition interval f g h with the favored party in the middle; both
  // favored flanks coincide with the interval ends, so patterns collapse.
  ElectionInstance inst({party_at("g", "20/100", true), party_at("f", "35/100", true),
                         party_at("h", "50/100", true), party_at("o", "80/100", false)},
                        {peak_block("21/100", 1), peak_block("36/100", 1),
                         peak_block("51/100", 1), peak_block("79/100", 1)});
  ObjectiveSpec obj = make_objective(inst, Rat(1, 4), Rat(1, 2), "f");
  IntervalDecomposition dec = decompose_intervals(inst, inst.full_set(), obj.coalition);
  REQUIRE(dec.q() == 1);
  REQUIRE(dec.coalition[0].parties.size() == 3);

  std::vector<EndRunOption> runs = enumerate_end_runs(inst, obj, dec.coalition[0], 2, 4, 0);
  // Distinct deletion sets: {}, {g}, {h}, {g,h}; the favored party is fixed.
  CHECK(runs.size() == 4);
  for (const EndRunOption& r : runs) {
    for (int p : r.deleted) CHECK(p != inst.index_of("f"));
  }

  // Four-location enumeration without the favored party inside is an error.
  CHECK_THROWS_AS(enumerate_end_runs(inst, obj, dec.opposition[1], 2, 4, 1), QueryError);
  CHECK_THROWS_AS(enumerate_end_runs(inst, obj, dec.coalition[0], 2, 3, 0), QueryError);
}

TEST_CASE("opposition deleting steers voters across the spectrum") {
  ElectionInstance inst({party_at("a", "1/5", true), party_at("b", "1/2", false),
                         party_at("c", "4/5", false)},
                        {peak_block("15/100", 1), peak_block("45/100", 1)});
  ObjectiveSpec obj = make_objective(inst, Rat(1), Rat(0), std::nullopt);

  SolveOutcome out = solve_cc_dop(inst, obj, 1);
  REQUIRE(out.decision);
  REQUIRE(out.witness.size() == 1);
  CHECK(inst.party(out.witness[0]).id == "b");  // 45/100 then prefers a over c
  CHECK(out.coalition_votes == 2);

  SolveOutcome oracle =
      solve_exhaustive(inst, obj, ControlQuery{Action::DOP, Mode::CC, 1});
  CHECK(oracle.decision);
  CHECK(oracle.witness == out.witness);

  CHECK_FALSE(solve_cc_dop(inst, obj, 0).decision);
}

TEST_CASE("coalition deleting funnels votes into the favored party") {
  ElectionInstance inst({party_at("f", "1/10", true), party_at("g", "2/10", true),
                         party_at("h", "3/10", true), party_at("o", "6/10", false)},
                        {peak_block("9/100", 2), peak_block("19/100", 2),
                         peak_block("31/100", 2), peak_block("61/100", 2)});
  ObjectiveSpec obj = make_objective(inst, Rat(1, 2), Rat(11, 20), "f");

  // Baseline: coalition 6 of 8 but the favored party holds only 2 < 11/20 * 6.
  ObjectiveEval base = evaluate_objectives(tally(inst, inst.full_set()), obj);
  CHECK(base.coalition_votes == 6);
  CHECK(base.favored_votes == 2);
  CHECK(base.coalition_ok);
  CHECK_FALSE(base.favored_ok);

  // Deleting g moves its two voters to f (distance 9/100 vs 11/100 to h).
  for (auto solve : {solve_ccfp_dcp_contiguous, solve_ccfp_dcp_dp}) {
    SolveOutcome out = solve(inst, obj, 1);
    REQUIRE(out.decision);
    REQUIRE(out.witness.size() == 1);
    CHECK(inst.party(out.witness[0]).id == "g");
    CHECK(out.coalition_votes == 6);
    CHECK(out.favored_votes == 4);
  }
  SolveOutcome oracle =
      solve_exhaustive(inst, obj, ControlQuery{Action::DCP, Mode::CCFP, 1});
  REQUIRE(oracle.decision);
  CHECK(inst.party(oracle.witness[0]).id == "g");
}

TEST_CASE("opposition deleting under a favored-party objective") {
  ElectionInstance inst({party_at("f", "1/10", true), party_at("g", "3/10", true),
                         party_at("o1", "6/10", false), party_at("o2", "8/10", false)},
                        {peak_block("11/100", 2), peak_block("29/100", 1),
                         peak_block("47/100", 3), peak_block("81/100", 2)});
  ObjectiveSpec obj = make_objective(inst, Rat(3, 4), Rat(1, 3), "f");

  // Baseline: f=2 g=1 o1=3 o2=2; deleting o1 sends its three voters to g.
  for (auto solve : {solve_ccfp_dop_contiguous, solve_ccfp_dop_dp}) {
    SolveOutcome out = solve(inst, obj, 1);
    REQUIRE(out.decision);
    REQUIRE(out.witness.size() == 1);
    CHECK(inst.party(out.witness[0]).id == "o1");
    CHECK(out.coalition_votes == 6);
    CHECK(out.favored_votes == 2);
  }
  SolveOutcome oracle =
      solve_exhaustive(inst, obj, ControlQuery{Action::DOP, Mode::CCFP, 1});
  REQUIRE(oracle.decision);
  CHECK(inst.party(oracle.witness[0]).id == "o1");
}

TEST_CASE("interior runs never change coalition or favored totals") {
  int exercised = 0;
  for (int trial = 0; trial < 120 && exercised < 80; ++trial) {
    const Action action = trial % 2 == 0 ? Action::DOP : Action::DCP;
    const Mode mode = Mode::CCFP;
    GenParams params = fuzz_params(action, mode, 606, trial);
    params.m = 6 + trial % 3;
    GenResult gen = generate_random(params);
    const ElectionInstance& inst = gen.problem.instance;
    const ObjectiveSpec& obj = gen.problem.objective;

    const IntervalDecomposition dec =
        decompose_intervals(inst, inst.full_set(), obj.coalition);
    const std::vector<Interval>& side =
        action == Action::DOP ? dec.opposition : dec.coalition;
    const ObjectiveEval base = evaluate_objectives(tally(inst, inst.full_set()), obj);

    for (const Interval& iv : side) {
      const int t = static_cast<int>(iv.parties.size());
      for (int from = 1; from + 1 < t; ++from) {
        for (int len = 1; from + len + 1 <= t; ++len) {
          std::vector<int> run = run_slice(iv.parties, from, len);
          // Coalition-side runs must stay clear of the favored party and its
          // flanks: runs touching a favored neighbour do shift votes.
          if (action == Action::DCP) {
            bool touches_favored = false;
            for (int offset = from - 1; offset <= from + len; ++offset) {
              if (offset >= 0 && offset < t && iv.parties[offset] == obj.favored) {
                touches_favored = true;
              }
            }
            if (touches_favored) continue;
          }
          ControlQuery query{action, mode, static_cast<int>(run.size())};
          ObjectiveEval after = resimulate(inst, obj, query, run);
          CHECK(after.coalition_votes == base.coalition_votes);
          CHECK(after.favored_votes == base.favored_votes);
          ++exercised;
        }
      }
    }
  }
  CHECK(exercised >= 20);
}

TEST_CASE("deleting solvers agree with the oracle") {
  for (int trial = 0; trial < 150; ++trial) {
    GenParams params = fuzz_params(Action::DOP, Mode::CC, 21, trial);
    GenResult gen = generate_random(params);
    const ProblemInstance& pi = gen.problem;
    SolveOutcome oracle = solve_exhaustive(pi.instance, pi.objective, pi.query);
    CHECK(oracle.decision ==
          solve_cc_dop(pi.instance, pi.objective, pi.query.budget).decision);
  }
  for (int trial = 0; trial < 150; ++trial) {
    GenParams params = fuzz_params(Action::DCP, Mode::CCFP, 22, trial);
    GenResult gen = generate_random(params);
    const ProblemInstance& pi = gen.problem;
    SolveOutcome oracle = solve_exhaustive(pi.instance, pi.objective, pi.query);
    CHECK(oracle.decision ==
          solve_ccfp_dcp_dp(pi.instance, pi.objective, pi.query.budget).decision);
    if (gen.achieved_q == 1) {
      CHECK(oracle.decision ==
            solve_ccfp_dcp_contiguous(pi.instance, pi.objective, pi.query.budget).decision);
    }
  }
  for (int trial = 0; trial < 150; ++trial) {
    GenParams params = fuzz_params(Action::DOP, Mode::CCFP, 23, trial);
    GenResult gen = generate_random(params);
    const ProblemInstance& pi = gen.problem;
    SolveOutcome oracle = solve_exhaustive(pi.instance, pi.objective, pi.query);
    CHECK(oracle.decision ==
          solve_ccfp_dop_dp(pi.instance, pi.objective, pi.query.budget).decision);
    if (gen.achieved_q == 1) {
      CHECK(oracle.decision ==
            solve_ccfp_dop_contiguous(pi.instance, pi.objective, pi.query.budget).decision);
    }
  }
  // Mode CC coalition deleting: immune, and the solver says so.
  for (int trial = 0; trial < 60; ++trial) {
    GenParams params = fuzz_params(Action::DCP, Mode::CC, 24, trial);
    GenResult gen = generate_random(params);
    const ProblemInstance& pi = gen.problem;
    SolveOutcome oracle = solve_exhaustive(pi.instance, pi.objective, pi.query);
    SolveOutcome solver = solve_ccfp_dcp_dp(pi.instance, pi.objective, pi.query.budget);
    CHECK(oracle.decision == solver.decision);
    CHECK(solver.immune);
  }
}

TEST_CASE("deleting solvers reject queries outside their contract") {
  ElectionInstance inst({party_at("f", "1/10", true), party_at("o", "6/10", false)},
                        {peak_block("11/100", 2), peak_block("59/100", 2)});
  ObjectiveSpec cc = make_objective(inst, Rat(1, 2), Rat(0), std::nullopt);
  ObjectiveSpec ccfp = make_objective(inst, Rat(1, 2), Rat(1, 2), "f");

  CHECK_THROWS_AS(solve_cc_dop(inst, ccfp, 1), QueryError);
  CHECK_THROWS_AS(solve_ccfp_dop_contiguous(inst, cc, 1), QueryError);
  CHECK_THROWS_AS(solve_ccfp_dop_dp(inst, cc, 1), QueryError);

  ElectionInstance orders({party("f", true), party("o", false)},
                          {order_block({"f", "o"}, 2)});
  ObjectiveSpec oobj = make_objective(orders, Rat(1, 2), Rat(0), std::nullopt);
  CHECK_THROWS_AS(solve_cc_dop(orders, oobj, 1), QueryError);

  // Two coalition intervals: contiguous deleting solvers refuse.
  ElectionInstance split({party_at("f", "1/10", true), party_at("o1", "4/10", false),
                          party_at("g", "7/10", true), party_at("o2", "9/10", false)},
                         {peak_block("11/100", 2), peak_block("39/100", 2),
                          peak_block("71/100", 2), peak_block("89/100", 2)});
  ObjectiveSpec sobj = make_objective(split, Rat(1, 2), Rat(1, 2), "f");
  CHECK_THROWS_AS(solve_ccfp_dcp_contiguous(split, sobj, 1), QueryError);
  CHECK_THROWS_AS(solve_ccfp_dop_contiguous(split, sobj, 1), QueryError);
}
