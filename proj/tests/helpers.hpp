#pragma once

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "coalctrl/generate.hpp"
#include "coalctrl/model.hpp"

namespace testutil {

using namespace coalctrl;

inline Party party(std::string id, bool coalition, bool spoiler = false) {
  return Party{std::move(id), std::nullopt, coalition, spoiler};
}

inline Party party_at(std::string id, const std::string& pos, bool coalition,
                      bool spoiler = false) {
  return Party{std::move(id), parse_rational(pos), coalition, spoiler};
}

inline VoterBlock order_block(std::vector<std::string> order, std::int64_t count) {
  return VoterBlock{std::move(order), std::nullopt, count};
}

inline VoterBlock peak_block(const std::string& peak, std::int64_t count) {
  return VoterBlock{{}, parse_rational(peak), count};
}

inline ProblemInstance make_problem(ElectionInstance inst, const std::string& phi,
                                    const std::string& rho,
                                    std::optional<std::string> favored, Action action,
                                    Mode mode, int budget) {
  ObjectiveSpec obj =
      make_objective(inst, parse_rational(phi), parse_rational(rho), favored);
  ControlQuery query{action, mode, budget};
  validate_query(inst, obj, query);
  return ProblemInstance{std::move(inst), std::move(obj), query};
}

/// First worked adding example: three parties, the mid-ranked one a coalition
/// spoiler, six voters in three equal blocks.
inline ProblemInstance example_one(int budget = 1) {
  ElectionInstance inst(
      {party("p1", true), party("p2", true, true), party("p3", false)},
      {order_block({"p3", "p2", "p1"}, 2), order_block({"p2", "p3", "p1"}, 2),
       order_block({"p1", "p3", "p2"}, 2)});
  return make_problem(std::move(inst), "2/3", "0", std::nullopt, Action::ACP, Mode::CC,
                      budget);
}

/// Second worked adding example: favored-party variant with two coalition
/// spoilers; only one of them satisfies the favored-party ratio.
inline ProblemInstance example_two(int budget = 1) {
  ElectionInstance inst(
      {party("p1", true), party("p2", true, true), party("p3", true, true),
       party("p4", false)},
      {order_block({"p3", "p4", "p2", "p1"}, 2), order_block({"p2", "p3", "p4", "p1"}, 2),
       order_block({"p1", "p3", "p2", "p4"}, 2)});
  return make_problem(std::move(inst), "2/3", "1/2", "p1", Action::ACP, Mode::CCFP, budget);
}

inline std::string data_dir() {
  if (const char* env = std::getenv("COALCTRL_DATA")) return env;
  return "data/golden";
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Deterministic parameter mix for solver-vs-oracle fuzzing.
inline GenParams fuzz_params(Action action, Mode mode, std::uint64_t seed, int i,
                             int q_target = 0) {
  GenParams params;
  params.kind = "ssp";
  params.action = action;
  params.mode = mode;
  params.m = 4 + i % 5;
  params.n = 6 + i % 25;
  params.k = i % 4;
  params.q_target = q_target > 0 ? q_target : 1 + i % 3;
  params.seed = seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(i + 1));
  return params;
}

}  // namespace testutil
