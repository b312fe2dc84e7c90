#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "coalctrl/dispatch.hpp"
#include "coalctrl/generate.hpp"
#include "coalctrl/io.hpp"
#include "coalctrl/reductions.hpp"

namespace {

using namespace coalctrl;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InstanceError("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InstanceError("cannot write file '" + out_path + "'");
  out << payload;
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

std::string witness_ids(const ProblemInstance& pi, const SolveOutcome& out) {
  std::string joined = "{";
  for (std::size_t i = 0; i < out.witness.size(); ++i) {
    if (i) joined += ",";
    joined += pi.instance.party(out.witness[i]).id;
  }
  return joined + "}";
}

InstanceDocument load_instance(const std::string& path, int k_override) {
  InstanceDocument doc = parse_instance(read_file(path));
  if (k_override >= 0) {
    doc.problem.query.budget = k_override;
    validate_query(doc.problem.instance, doc.problem.objective, doc.problem.query);
  }
  return doc;
}

int solve_command(const std::string& instance_path, const std::string& solver, int k_override,
                  std::uint64_t cap, const std::string& out_path) {
  const InstanceDocument doc = load_instance(instance_path, k_override);
  const SolveOutcome out = run_solver(doc.problem, solver, OracleOptions{cap});
  write_output(out_path, outcome_json(doc.problem, out));
  std::cerr << "solver=" << out.solver << " decision=" << (out.decision ? "yes" : "no")
            << " witness=" << witness_ids(doc.problem, out) << " coalition="
            << out.coalition_votes << "/" << doc.problem.instance.voter_count();
  if (doc.problem.objective.favored >= 0) {
    std::cerr << " favored=" << out.favored_votes;
  }
  if (out.immune) std::cerr << " immune=yes";
  std::cerr << " wall_ms=" << out.wall_ms << "\n";
  return 0;
}

std::vector<std::pair<std::string, ProblemInstance>> seeded_suite(std::uint64_t seed,
                                                                  int count) {
  // Deterministic mixed sweep: all four actions, both modes, q in {1,2,3},
  // sizes small enough for the exhaustive oracle.
  const Action actions[4] = {Action::ACP, Action::AOP, Action::DCP, Action::DOP};
  std::vector<std::pair<std::string, ProblemInstance>> items;
  for (int i = 0; i < count; ++i) {
    GenParams params;
    params.kind = "ssp";
    params.action = actions[i % 4];
    params.mode = (i / 4) % 2 == 0 ? Mode::CC : Mode::CCFP;
    params.q_target = 1 + (i / 8) % 3;
    params.m = 4 + i % 5;
    params.n = 6 + i % 25;
    params.k = i % 4;
    params.seed = seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(i + 1));
    std::string id = "seed-" + std::to_string(seed) + "-" + std::to_string(i);
    items.emplace_back(std::move(id), generate_random(params).problem);
  }
  return items;
}

int verify_command(const std::string& corpus, std::uint64_t seed, int count, std::uint64_t cap,
                   const std::string& out_path) {
  std::vector<std::pair<std::string, ProblemInstance>> items;
  if (!corpus.empty()) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(corpus)) {
      if (entry.is_regular_file() && entry.path().extension() == ".json") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw InstanceError("corpus directory holds no .json instances");
    for (const auto& file : files) {
      items.emplace_back(file.filename().string(),
                         parse_instance(read_file(file.string())).problem);
    }
  } else {
    items = seeded_suite(seed, count);
  }
  const VerifyReport report = verify_instances(items, OracleOptions{cap});
  write_output(out_path, verify_json(report));
  std::cerr << "instances=" << report.instances << " comparisons=" << report.comparisons
            << " disagreements=" << report.disagreements
            << " capacity_errors=" << report.capacity_errors
            << (report.all_agree() && report.capacity_errors == 0 ? " -> OK" : " -> FAIL")
            << "\n";
  if (report.disagreements > 0) return 2;
  if (report.capacity_errors > 0) return 3;
  return 0;
}

int generate_command(const GenParams& params, const std::string& out_path) {
  const GenResult gen = generate_random(params);
  write_output(out_path, emit_instance(gen.problem, natural_rep(gen.problem.instance)));
  std::cerr << "generated kind=" << params.kind << " m=" << params.m << " n=" << params.n
            << " k=" << params.k << " action=" << action_name(params.action)
            << " mode=" << mode_name(params.mode);
  if (params.kind == "ssp") std::cerr << " q=" << gen.achieved_q;
  std::cerr << " seed=" << params.seed << "\n";
  return 0;
}

Graph parse_graph_file(const std::string& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InstanceError(std::string("graph file: malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges")) {
    throw InstanceError("graph file: expected {\"vertices\": n, \"edges\": [[a,b],...]}");
  }
  Graph g;
  if (!doc["vertices"].is_number_integer() && !doc["vertices"].is_number_unsigned()) {
    throw InstanceError("graph file: 'vertices' must be an integer");
  }
  g.vertex_count = doc["vertices"].get<int>();
  if (!doc["edges"].is_array()) throw InstanceError("graph file: 'edges' must be an array");
  for (const auto& e : doc["edges"]) {
    if (!e.is_array() || e.size() != 2) {
      throw InstanceError("graph file: each edge is a two-element array");
    }
    g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  validate_graph(g);
  return g;
}

int reduce_command(const std::string& from, const std::string& target_name,
                   const std::string& graph_path, const std::string& values_csv,
                   std::int64_t tau, int k, const std::string& out_path) {
  const ControlProblem target = problem_from_name(target_name);
  ProblemInstance problem = [&] {
    if (from == "dominating-set" || from == "clique") {
      if (graph_path.empty()) throw InstanceError("reduce: --graph <file> is required");
      const Graph g = parse_graph_file(graph_path);
      return from == "clique" ? clique_gadget(g, k, target)
                              : dominating_set_gadget(g, k, target);
    }
    if (from == "subset-sum") {
      if (values_csv.empty()) throw InstanceError("reduce: --values <csv> is required");
      SubsetSumInstance ssi;
      std::stringstream ss(values_csv);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        if (!tok.empty()) ssi.values.push_back(std::stoll(tok));
      }
      ssi.target = tau;
      ssi.k = k;
      return subset_sum_gadget(ssi, target);
    }
    throw InstanceError("reduce: --from must be dominating-set, clique or subset-sum");
  }();
  write_output(out_path, emit_instance(problem, natural_rep(problem.instance)));
  std::cerr << "reduced " << from << " -> " << problem_name(target)
            << " gadget: parties=" << problem.instance.party_count()
            << " voters=" << problem.instance.voter_count() << " k=" << problem.query.budget
            << "\n";
  return 0;
}

int bench_command(const std::string& sizes_csv, std::uint64_t seed,
                  const std::string& out_path) {
  std::vector<std::int64_t> sizes;
  std::stringstream ss(sizes_csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) sizes.push_back(std::stoll(tok));
  }
  if (sizes.empty()) throw InstanceError("bench: --sizes must list voter counts");
  const std::vector<BenchRow> rows = run_bench(sizes, seed);
  write_output(out_path, bench_json(rows));
  for (const BenchRow& row : rows) {
    std::cerr << row.solver << " n=" << row.n << " table_entries=" << row.table_entries
              << " wall_ms=" << row.wall_ms << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coalctrl: coalition vote-share control in plurality elections"};
  app.require_subcommand(1);

  // solve / oracle
  std::string instance_path, solver = "auto", out_path;
  int k_override = -1;
  std::uint64_t cap = std::uint64_t(1) << 20;
  auto* solve = app.add_subcommand("solve", "decide one instance with a chosen solver");
  solve->add_option("--instance", instance_path, "instance file")->required();
  solve->add_option("--solver", solver, "solver name or 'auto'");
  solve->add_option("--k", k_override, "override the action budget");
  solve->add_option("--cap", cap, "oracle subset enumeration cap");
  solve->add_option("--out", out_path, "write the JSON result here instead of stdout");

  auto* oracle = app.add_subcommand("oracle", "decide one instance by exhaustive enumeration");
  oracle->add_option("--instance", instance_path, "instance file")->required();
  oracle->add_option("--k", k_override, "override the action budget");
  oracle->add_option("--cap", cap, "oracle subset enumeration cap");
  oracle->add_option("--out", out_path, "write the JSON result here instead of stdout");

  // verify
  std::string corpus;
  std::uint64_t seed = 0;
  int count = 32;
  auto* verify = app.add_subcommand("verify",
                                    "run every applicable solver against the oracle");
  verify->add_option("--corpus", corpus, "directory of .json instances");
  verify->add_option("--seed", seed, "seed for the generated sweep");
  verify->add_option("--count", count, "number of generated instances");
  verify->add_option("--cap", cap, "oracle subset enumeration cap");
  verify->add_option("--out", out_path, "write the JSON report here instead of stdout");

  // generate
  GenParams gen_params;
  std::string gen_action = "ACP", gen_mode = "CC";
  auto* generate = app.add_subcommand("generate", "emit a seeded random instance");
  generate->add_option("--kind", gen_params.kind, "'ssp' or 'general'");
  generate->add_option("--m", gen_params.m, "party count");
  generate->add_option("--n", gen_params.n, "voter count");
  generate->add_option("--k", gen_params.k, "action budget");
  generate->add_option("--q", gen_params.q_target, "coalition interval target (ssp)");
  generate->add_option("--coalition-permille", gen_params.coalition_permille,
                       "coalition density when --q is 0");
  generate->add_option("--spoiler-permille", gen_params.spoiler_permille,
                       "spoiler density on the acting side");
  generate->add_option("--action", gen_action, "ACP, AOP, DCP or DOP");
  generate->add_option("--mode", gen_mode, "CC or CCFP");
  generate->add_option("--seed", gen_params.seed, "generator seed");
  generate->add_option("--out", out_path, "write the instance here instead of stdout");

  // reduce
  std::string from, target_name = "CC-ACP", graph_path, values_csv;
  std::int64_t tau = 0;
  int reduce_k = 1;
  auto* reduce = app.add_subcommand("reduce", "emit a hardness gadget as an instance file");
  reduce->add_option("--from", from, "dominating-set, clique or subset-sum")->required();
  reduce->add_option("--target", target_name, "problem name, e.g. CCFP-DCP")->required();
  reduce->add_option("--graph", graph_path, "graph file: {\"vertices\":n,\"edges\":[[a,b],..]}");
  reduce->add_option("--values", values_csv, "subset-sum values, comma separated");
  reduce->add_option("--tau", tau, "subset-sum target");
  reduce->add_option("--k", reduce_k, "source budget / subset size bound");
  reduce->add_option("--out", out_path, "write the instance here instead of stdout");

  // bench
  std::string sizes_csv = "50,100,200,400";
  auto* bench = app.add_subcommand("bench", "sweep the pseudo-polynomial DPs over n");
  bench->add_option("--sizes", sizes_csv, "voter counts, comma separated");
  bench->add_option("--seed", seed, "generator seed");
  bench->add_option("--out", out_path, "write the JSON rows here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) return solve_command(instance_path, solver, k_override, cap, out_path);
    if (oracle->parsed()) {
      return solve_command(instance_path, "oracle", k_override, cap, out_path);
    }
    if (verify->parsed()) return verify_command(corpus, seed, count, cap, out_path);
    if (generate->parsed()) {
      gen_params.action = action_from_name(upper(gen_action));
      gen_params.mode = mode_from_name(upper(gen_mode));
      return generate_command(gen_params, out_path);
    }
    if (reduce->parsed()) {
      return reduce_command(from, target_name, graph_path, values_csv, tau, reduce_k, out_path);
    }
    if (bench->parsed()) return bench_command(sizes_csv, seed, out_path);
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
