#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "coalctrl/model.hpp"
#include "coalctrl/oracle.hpp"

namespace coalctrl {

/// Every named solver the dispatcher can run, oracle included.
std::vector<std::string> solver_names();

/// Solver the routing rules prescribe: immunity shortcuts for CC adding-
/// opposition / deleting-coalition, polynomial or contiguous solvers on
/// single-peaked instances (contiguous when the coalition forms one
/// interval), pseudo-polynomial DPs otherwise, exhaustive oracle for general
/// preferences.
std::string auto_solver(const ProblemInstance& pi);

/// Runs a solver by name ("auto" routes first). Wall time is measured here.
/// Throws QueryError when the named solver cannot handle the instance.
SolveOutcome run_solver(const ProblemInstance& pi, const std::string& name,
                        const OracleOptions& opts = {});

/// All non-oracle solvers whose preconditions hold on this instance.
std::vector<std::string> applicable_solvers(const ProblemInstance& pi);

struct VerifyRow {
  std::string id;
  std::string solver;
  bool oracle_decision = false;
  bool solver_decision = false;
  bool agree = false;
  std::string error;  // nonempty when the row failed instead of comparing
};

struct VerifyReport {
  std::vector<VerifyRow> rows;
  int instances = 0;
  int comparisons = 0;
  int disagreements = 0;
  int capacity_errors = 0;

  bool all_agree() const { return disagreements == 0; }
};

/// Runs every applicable solver against the oracle on each instance. Items
/// are processed and reported in the given order; witness re-simulation is
/// enforced inside every solver's outcome packaging.
VerifyReport verify_instances(const std::vector<std::pair<std::string, ProblemInstance>>& items,
                              const OracleOptions& opts = {});

struct BenchRow {
  std::string solver;
  std::int64_t n = 0;
  std::uint64_t table_entries = 0;
  double wall_ms = 0.0;
};

/// Sweeps the four budget-reachability DPs over voter counts, recording DP
/// table sizes; entry growth stays quadratic in n at fixed m, k, q.
std::vector<BenchRow> run_bench(const std::vector<std::int64_t>& sizes, std::uint64_t seed);

std::string outcome_json(const ProblemInstance& pi, const SolveOutcome& out);
std::string verify_json(const VerifyReport& report);
std::string bench_json(const std::vector<BenchRow>& rows);

}  // namespace coalctrl
