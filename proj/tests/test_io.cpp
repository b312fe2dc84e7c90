#include <doctest.h>

#include <string>
#include <vector>

#include "coalctrl/generate.hpp"
#include "coalctrl/io.hpp"
#include "coalctrl/oracle.hpp"
#include "coalctrl/ssp.hpp"
#include "helpers.hpp"

using namespace coalctrl;
using namespace testutil;

namespace {

void check_throws_naming(const std::string& text, const std::string& needle) {
  try {
    parse_instance(text);
    FAIL("expected InstanceError mentioning '" << needle << "'");
  } catch (const InstanceError& e) {
    const std::string what = e.what();
    CHECK_MESSAGE(what.find(needle) != std::string::npos,
                  "error '" << what << "' does not mention '" << needle << "'");
  }
}

std::string golden(const std::string& name) {
  const std::string text = read_file(data_dir() + "/" + name);
  REQUIRE_MESSAGE(!text.empty(), "missing golden file: " << name);
  return text;
}

}  // namespace

TEST_CASE("golden corpus files parse, solve and round-trip") {
  for (const std::string name :
       {"example1.json", "example2.json", "gadget_dominating_cc_acp.json",
        "gadget_clique_ccfp_dcp.json", "gadget_subsetsum_ccfp_dop.json"}) {
    const std::string text = golden(name);
    InstanceDocument doc = parse_instance(text);
    const std::string emitted = emit_instance(doc.problem, doc.rep);
    CHECK(emitted == text);  // corpus files are stored canonically
    InstanceDocument again = parse_instance(emitted);
    CHECK(emit_instance(again.problem, again.rep) == emitted);
  }

  InstanceDocument one = parse_instance(golden("example1.json"));
  SolveOutcome out1 = solve_exhaustive(one.problem.instance, one.problem.objective,
                                       one.problem.query);
  REQUIRE(out1.decision);
  CHECK(one.problem.instance.party(out1.witness.at(0)).id == "p2");
  CHECK(out1.coalition_votes == 4);

  InstanceDocument two = parse_instance(golden("example2.json"));
  SolveOutcome out2 = solve_exhaustive(two.problem.instance, two.problem.objective,
                                       two.problem.query);
  REQUIRE(out2.decision);
  CHECK(two.problem.instance.party(out2.witness.at(0)).id == "p2");
  CHECK(out2.favored_votes == 2);
}

TEST_CASE("every representation round-trips byte-identically") {
  for (int trial = 0; trial < 30; ++trial) {
    GenParams params = fuzz_params(static_cast<Action>(trial % 4),
                                   trial % 2 == 0 ? Mode::CC : Mode::CCFP, 77, trial);
    GenResult gen = generate_random(params);

    for (VoterRep rep : {VoterRep::SspPeaks, VoterRep::CompactBands}) {
      const std::string text = emit_instance(gen.problem, rep);
      InstanceDocument doc = parse_instance(text);
      CHECK(doc.rep == rep);
      CHECK(emit_instance(doc.problem, doc.rep) == text);

      // Semantically identical: same decision and tallies as the original.
      SolveOutcome a = solve_exhaustive(gen.problem.instance, gen.problem.objective,
                                        gen.problem.query);
      SolveOutcome b = solve_exhaustive(doc.problem.instance, doc.problem.objective,
                                        doc.problem.query);
      CHECK(a.decision == b.decision);
      CHECK(a.coalition_votes == b.coalition_votes);
      CHECK(a.favored_votes == b.favored_votes);
    }
  }
  // Extensive representation for order-based instances.
  for (int trial = 0; trial < 10; ++trial) {
    GenParams params = fuzz_params(Action::ACP, Mode::CC, 78, trial);
    params.kind = "general";
    GenResult gen = generate_random(params);
    const std::string text = emit_instance(gen.problem, VoterRep::Extensive);
    InstanceDocument doc = parse_instance(text);
    CHECK(doc.rep == VoterRep::Extensive);
    CHECK(emit_instance(doc.problem, doc.rep) == text);
  }
}

TEST_CASE("natural representation matches the voter blocks") {
  GenParams ssp = fuzz_params(Action::ACP, Mode::CC, 79, 0);
  CHECK(natural_rep(generate_random(ssp).problem.instance) == VoterRep::SspPeaks);
  GenParams gen = ssp;
  gen.kind = "general";
  CHECK(natural_rep(generate_random(gen).problem.instance) == VoterRep::Extensive);
}

TEST_CASE("parser names the offending field") {
  const std::string base = R"({
  "schema": 1,
  "parties": [
    {"id": "a", "position": "1/4", "coalition": true, "spoiler": false},
    {"id": "b", "position": "3/4", "coalition": false, "spoiler": false}
  ],
  "voters": {"ssp_peaks": [{"peak": "1/5", "count": 2}]},
  "objective": {"phi": "1/2", "rho": "0"},
  "control": {"action": "ACP", "mode": "CC", "k": 0}
})";
  CHECK(parse_instance(base).problem.instance.voter_count() == 2);

  auto patched = [&](const std::string& from, const std::string& to) {
    std::string text = base;
    text.replace(text.find(from), from.size(), to);
    return text;
  };

  check_throws_naming(patched("\"schema\": 1", "\"schema\": 2"), "schema");
  check_throws_naming(patched("\"phi\": \"1/2\"", "\"phi\": 0.5"),
                      "floating-point literals are not exact");
  check_throws_naming(patched("\"count\": 2", "\"count\": -1"), "count");
  check_throws_naming(patched("\"peak\": \"1/5\"", "\"peak\": \"1/2\""), "divider");
  check_throws_naming(patched("\"id\": \"b\"", "\"id\": \"a\""), "'a'");
  check_throws_naming(patched("\"k\": 0", "\"k\": -3"), "control.k");
  check_throws_naming(patched("\"action\": \"ACP\"", "\"action\": \"XYZ\""), "control");
  check_throws_naming(patched("\"rho\": \"0\"", "\"rho\": \"1/2\""), "objective");
  check_throws_naming(patched("\"coalition\": true,", "\"coalition\": true, \"color\": 3,"),
                      "color");
  check_throws_naming("{]", "malformed JSON");
  check_throws_naming("[1, 2]", "document");

  // rho > 0 with a favored party outside the coalition.
  std::string favored = patched("\"phi\": \"1/2\", \"rho\": \"0\"",
                                "\"phi\": \"1/2\", \"rho\": \"1/2\", \"favored\": \"b\"");
  check_throws_naming(favored, "objective");

  // Spoilers are illegal in deleting instances.
  std::string spoiled = patched("\"coalition\": false, \"spoiler\": false",
                                "\"coalition\": false, \"spoiler\": true");
  spoiled.replace(spoiled.find("\"action\": \"ACP\""), 15, "\"action\": \"DOP\"");
  CHECK_THROWS_AS(parse_instance(spoiled), QueryError);
}

TEST_CASE("compact band representation expands to band midpoints") {
  const std::string text = R"({
  "schema": 1,
  "parties": [
    {"id": "a", "position": "0", "coalition": true, "spoiler": false},
    {"id": "b", "position": "1/2", "coalition": false, "spoiler": false},
    {"id": "c", "position": "1", "coalition": true, "spoiler": false}
  ],
  "voters": {"compact_bands": [{"band": 0, "count": 3}, {"band": 2, "count": 1}]},
  "objective": {"phi": "1", "rho": "0"},
  "control": {"action": "DOP", "mode": "CC", "k": 1}
})";
  InstanceDocument doc = parse_instance(text);
  CHECK(doc.rep == VoterRep::CompactBands);
  const ElectionInstance& inst = doc.problem.instance;
  CHECK(inst.voter_count() == 4);
  REQUIRE(inst.voters().size() == 2);
  CHECK(*inst.voters()[0].peak == Rat(1, 8));  // midpoint of (0, 1/4)
  CHECK(*inst.voters()[1].peak == Rat(5, 8));  // midpoint of (1/2, 3/4)

  // Deleting b moves the band-2 voter to c (distance 3/8 vs 5/8 to a).
  SolveOutcome out = solve_exhaustive(inst, doc.problem.objective, doc.problem.query);
  REQUIRE(out.decision);
  CHECK(inst.party(out.witness.at(0)).id == "b");

  check_throws_naming(std::string(text).replace(text.find("\"band\": 2"), 9, "\"band\": 9"),
                      "band index out of range");
}

TEST_CASE("rationals parse exactly regardless of spelling") {
  const std::string text = R"({
  "schema": 1,
  "parties": [
    {"id": "a", "position": "0.25", "coalition": true, "spoiler": false},
    {"id": "b", "position": "3/4", "coalition": false, "spoiler": false}
  ],
  "voters": {"ssp_peaks": [{"peak": "0.2", "count": 1}]},
  "objective": {"phi": "0.5", "rho": "0"},
  "control": {"action": "ACP", "mode": "CC", "k": 0}
})";
  InstanceDocument doc = parse_instance(text);
  CHECK(*doc.problem.instance.party(0).position == Rat(1, 4));
  CHECK(doc.problem.objective.phi == Rat(1, 2));
  // Emission canonicalizes to a/b form.
  const std::string emitted = emit_instance(doc.problem, doc.rep);
  CHECK(emitted.find("\"1/4\"") != std::string::npos);
  CHECK(emitted.find("0.25") == std::string::npos);
}
