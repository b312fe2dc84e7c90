#include "coalctrl/dispatch.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>

#include <json.hpp>

#include "coalctrl/adding.hpp"
#include "coalctrl/deleting.hpp"
#include "coalctrl/generate.hpp"
#include "coalctrl/ssp.hpp"

namespace coalctrl {
namespace {

using nlohmann::ordered_json;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

void require_action(const ProblemInstance& pi, const std::string& name, Action action) {
  if (pi.query.action != action) {
    throw QueryError("solver '" + name + "' handles " + action_name(action) +
                     " queries only, instance asks for " + action_name(pi.query.action));
  }
}

SolveOutcome run_named(const ProblemInstance& pi, const std::string& name,
                       const OracleOptions& opts) {
  const ElectionInstance& inst = pi.instance;
  const ObjectiveSpec& obj = pi.objective;
  const int k = pi.query.budget;
  if (name == "oracle") return solve_exhaustive(inst, obj, pi.query, opts);
  if (name == "immune") {
    if (pi.query.mode != Mode::CC ||
        (pi.query.action != Action::AOP && pi.query.action != Action::DCP)) {
      throw QueryError(
          "solver 'immune' applies to CC adding-opposition / deleting-coalition only");
    }
    return immune_outcome(inst, obj, pi.query);
  }
  if (name == "cc-acp-dp") {
    require_action(pi, name, Action::ACP);
    return solve_cc_acp(inst, obj, k);
  }
  if (name == "ccfp-acp-contiguous") {
    require_action(pi, name, Action::ACP);
    return solve_ccfp_acp_contiguous(inst, obj, k);
  }
  if (name == "ccfp-acp-dp") {
    require_action(pi, name, Action::ACP);
    return solve_ccfp_acp_dp(inst, obj, k);
  }
  if (name == "ccfp-aop-contiguous") {
    require_action(pi, name, Action::AOP);
    return solve_ccfp_aop_contiguous(inst, obj, k);
  }
  if (name == "ccfp-aop-dp") {
    require_action(pi, name, Action::AOP);
    return solve_ccfp_aop_dp(inst, obj, k);
  }
  if (name == "cc-dop-dp") {
    require_action(pi, name, Action::DOP);
    return solve_cc_dop(inst, obj, k);
  }
  if (name == "ccfp-dcp-contiguous") {
    require_action(pi, name, Action::DCP);
    return solve_ccfp_dcp_contiguous(inst, obj, k);
  }
  if (name == "ccfp-dcp-dp") {
    require_action(pi, name, Action::DCP);
    return solve_ccfp_dcp_dp(inst, obj, k);
  }
  if (name == "ccfp-dop-contiguous") {
    require_action(pi, name, Action::DOP);
    return solve_ccfp_dop_contiguous(inst, obj, k);
  }
  if (name == "ccfp-dop-dp") {
    require_action(pi, name, Action::DOP);
    return solve_ccfp_dop_dp(inst, obj, k);
  }
  throw QueryError("unknown solver '" + name + "'");
}

}  // namespace

std::vector<std::string> solver_names() {
  return {"oracle",
          "immune",
          "cc-acp-dp",
          "ccfp-acp-contiguous",
          "ccfp-acp-dp",
          "ccfp-aop-contiguous",
          "ccfp-aop-dp",
          "cc-dop-dp",
          "ccfp-dcp-contiguous",
          "ccfp-dcp-dp",
          "ccfp-dop-contiguous",
          "ccfp-dop-dp"};
}

std::string auto_solver(const ProblemInstance& pi) {
  validate_query(pi.instance, pi.objective, pi.query);
  const Action action = pi.query.action;
  if (pi.query.mode == Mode::CC) {
    if (action == Action::AOP || action == Action::DCP) return "immune";
    if (!pi.instance.is_ssp()) return "oracle";
    return action == Action::ACP ? "cc-acp-dp" : "cc-dop-dp";
  }
  if (!pi.instance.is_ssp()) return "oracle";
  const int q = coalition_interval_count(pi.instance, pi.objective, action);
  const std::string act = lower(action_name(action));
  return q == 1 ? "ccfp-" + act + "-contiguous" : "ccfp-" + act + "-dp";
}

SolveOutcome run_solver(const ProblemInstance& pi, const std::string& name,
                        const OracleOptions& opts) {
  const std::string resolved = name == "auto" ? auto_solver(pi) : name;
  const auto start = std::chrono::steady_clock::now();
  SolveOutcome out = run_named(pi, resolved, opts);
  const auto stop = std::chrono::steady_clock::now();
  out.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return out;
}

std::vector<std::string> applicable_solvers(const ProblemInstance& pi) {
  std::vector<std::string> names;
  const Action action = pi.query.action;
  const bool ssp = pi.instance.is_ssp();
  const bool cc = pi.query.mode == Mode::CC;
  if (cc && (action == Action::AOP || action == Action::DCP)) names.push_back("immune");
  if (!ssp) return names;
  const int q = coalition_interval_count(pi.instance, pi.objective, action);
  const std::string act = lower(action_name(action));
  switch (action) {
    case Action::ACP:
      if (cc) {
        names.push_back("cc-acp-dp");
      } else {
        names.push_back("ccfp-acp-dp");
        if (q == 1) names.push_back("ccfp-acp-contiguous");
      }
      break;
    case Action::AOP:
      // the CCFP AOP solvers answer CC instances through their immunity
      // fallback, so they stay applicable in both modes
      names.push_back("ccfp-aop-dp");
      if (q == 1) names.push_back("ccfp-aop-contiguous");
      break;
    case Action::DCP:
      names.push_back("ccfp-dcp-dp");
      if (q == 1) names.push_back("ccfp-dcp-contiguous");
      break;
    case Action::DOP:
      if (cc) {
        names.push_back("cc-dop-dp");
      } else {
        names.push_back("ccfp-dop-dp");
        if (q == 1) names.push_back("ccfp-dop-contiguous");
      }
      break;
  }
  return names;
}

VerifyReport verify_instances(const std::vector<std::pair<std::string, ProblemInstance>>& items,
                              const OracleOptions& opts) {
  VerifyReport report;
  for (const auto& [id, pi] : items) {
    ++report.instances;
    SolveOutcome oracle_out;
    try {
      oracle_out = run_solver(pi, "oracle", opts);
    } catch (const CapacityError& e) {
      ++report.capacity_errors;
      report.rows.push_back(VerifyRow{id, "oracle", false, false, false, e.what()});
      continue;
    }
    for (const std::string& name : applicable_solvers(pi)) {
      VerifyRow row;
      row.id = id;
      row.solver = name;
      row.oracle_decision = oracle_out.decision;
      ++report.comparisons;
      try {
        const SolveOutcome out = run_solver(pi, name, opts);
        row.solver_decision = out.decision;
        row.agree = out.decision == oracle_out.decision;
        if (!row.agree) ++report.disagreements;
      } catch (const CapacityError& e) {
        row.error = e.what();
        ++report.capacity_errors;
      } catch (const std::exception& e) {
        // an applicable solver must not fail; count it against agreement
        row.error = e.what();
        ++report.disagreements;
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::vector<BenchRow> run_bench(const std::vector<std::int64_t>& sizes, std::uint64_t seed) {
  const std::vector<std::pair<std::string, Action>> dps = {
      {"ccfp-acp-dp", Action::ACP},
      {"ccfp-aop-dp", Action::AOP},
      {"ccfp-dcp-dp", Action::DCP},
      {"ccfp-dop-dp", Action::DOP},
  };
  std::vector<BenchRow> rows;
  for (std::size_t d = 0; d < dps.size(); ++d) {
    for (std::int64_t n : sizes) {
      GenParams params;
      params.kind = "ssp";
      params.m = 6;
      params.n = n;
      params.k = 2;
      params.q_target = 2;
      params.action = dps[d].second;
      params.mode = Mode::CCFP;
      // same seed across the n sweep: the party layout stays fixed and only
      // the voter count scales, so rows are comparable
      params.seed = seed * 1000003 + d * 7919;
      const GenResult gen = generate_random(params);
      const SolveOutcome out = run_solver(gen.problem, dps[d].first);
      rows.push_back(BenchRow{dps[d].first, n, out.table_entries, out.wall_ms});
    }
  }
  return rows;
}

std::string outcome_json(const ProblemInstance& pi, const SolveOutcome& out) {
  ordered_json j;
  j["decision"] = out.decision;
  ordered_json witness = ordered_json::array();
  for (int p : out.witness) witness.push_back(pi.instance.party(p).id);
  j["witness"] = std::move(witness);
  j["coalition_votes"] = out.coalition_votes;
  j["favored_votes"] = out.favored_votes;
  j["total_voters"] = pi.instance.voter_count();
  j["coalition_ok"] = out.coalition_ok;
  j["favored_ok"] = out.favored_ok;
  j["solver"] = out.solver;
  j["immune"] = out.immune;
  j["table_entries"] = out.table_entries;
  j["wall_ms"] = out.wall_ms;
  return j.dump(2) + "\n";
}

std::string verify_json(const VerifyReport& report) {
  ordered_json j;
  j["instances"] = report.instances;
  j["comparisons"] = report.comparisons;
  j["disagreements"] = report.disagreements;
  j["capacity_errors"] = report.capacity_errors;
  j["all_agree"] = report.all_agree();
  ordered_json rows = ordered_json::array();
  for (const VerifyRow& row : report.rows) {
    ordered_json r;
    r["id"] = row.id;
    r["solver"] = row.solver;
    if (row.error.empty()) {
      r["oracle_decision"] = row.oracle_decision;
      r["solver_decision"] = row.solver_decision;
      r["agree"] = row.agree;
    } else {
      r["error"] = row.error;
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string bench_json(const std::vector<BenchRow>& rows) {
  ordered_json arr = ordered_json::array();
  for (const BenchRow& row : rows) {
    ordered_json r;
    r["solver"] = row.solver;
    r["n"] = row.n;
    r["table_entries"] = row.table_entries;
    r["wall_ms"] = row.wall_ms;
    arr.push_back(std::move(r));
  }
  ordered_json j;
  j["rows"] = std::move(arr);
  return j.dump(2) + "\n";
}

}  // namespace coalctrl
