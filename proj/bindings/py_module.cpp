#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "coalctrl/dispatch.hpp"
#include "coalctrl/generate.hpp"
#include "coalctrl/io.hpp"
#include "coalctrl/reductions.hpp"

namespace py = pybind11;
using namespace coalctrl;

namespace {

constexpr std::uint64_t kDefaultCap = std::uint64_t(1) << 20;

std::string solve_text(const std::string& instance, const std::string& solver,
                       std::uint64_t cap) {
  const InstanceDocument doc = parse_instance(instance);
  return outcome_json(doc.problem, run_solver(doc.problem, solver, OracleOptions{cap}));
}

std::string normalize_text(const std::string& instance) {
  const InstanceDocument doc = parse_instance(instance);
  return emit_instance(doc.problem, doc.rep);
}

std::string generate_text(const std::string& kind, int m, std::int64_t n, int k, int q,
                          const std::string& action, const std::string& mode,
                          std::uint64_t seed) {
  GenParams params;
  params.kind = kind;
  params.m = m;
  params.n = n;
  params.k = k;
  params.q_target = q;
  params.action = action_from_name(action);
  params.mode = mode_from_name(mode);
  params.seed = seed;
  const GenResult gen = generate_random(params);
  return emit_instance(gen.problem, natural_rep(gen.problem.instance));
}

Graph make_graph(int vertices, const std::vector<std::pair<int, int>>& edges) {
  Graph g;
  g.vertex_count = vertices;
  g.edges = edges;
  validate_graph(g);
  return g;
}

std::string reduce_dominating_set(int vertices, const std::vector<std::pair<int, int>>& edges,
                                  int k, const std::string& target) {
  const ProblemInstance pi =
      dominating_set_gadget(make_graph(vertices, edges), k, problem_from_name(target));
  return emit_instance(pi, natural_rep(pi.instance));
}

std::string reduce_clique(int vertices, const std::vector<std::pair<int, int>>& edges, int k,
                          const std::string& target) {
  const ProblemInstance pi =
      clique_gadget(make_graph(vertices, edges), k, problem_from_name(target));
  return emit_instance(pi, natural_rep(pi.instance));
}

std::string reduce_subset_sum(const std::vector<std::int64_t>& values, std::int64_t target_sum,
                              int k, const std::string& target) {
  SubsetSumInstance ssi;
  ssi.values = values;
  ssi.target = target_sum;
  ssi.k = k;
  const ProblemInstance pi = subset_sum_gadget(ssi, problem_from_name(target));
  return emit_instance(pi, natural_rep(pi.instance));
}

std::string verify_seeded(std::uint64_t seed, int count, std::uint64_t cap) {
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
    items.emplace_back("seed-" + std::to_string(i), generate_random(params).problem);
  }
  return verify_json(verify_instances(items, OracleOptions{cap}));
}

std::string auto_solver_text(const std::string& instance) {
  return auto_solver(parse_instance(instance).problem);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coalition vote-share control in plurality elections: solvers, "
            "oracle, generators and hardness gadgets. All functions exchange "
            "instance documents and results as JSON text.";
  m.def("solve", &solve_text, py::arg("instance"), py::arg("solver") = "auto",
        py::arg("cap") = kDefaultCap,
        "Decide an instance document; returns the outcome as JSON text.");
  m.def("oracle",
        [](const std::string& instance, std::uint64_t cap) {
          return solve_text(instance, "oracle", cap);
        },
        py::arg("instance"), py::arg("cap") = kDefaultCap,
        "Decide by exhaustive enumeration; returns the outcome as JSON text.");
  m.def("auto_solver", &auto_solver_text, py::arg("instance"),
        "Name of the solver the routing rules pick for this instance.");
  m.def("solver_names", &solver_names, "All named solvers.");
  m.def("normalize", &normalize_text, py::arg("instance"),
        "Parse and re-emit an instance document in canonical form.");
  m.def("generate", &generate_text, py::arg("kind") = "ssp", py::arg("m") = 5,
        py::arg("n") = 20, py::arg("k") = 1, py::arg("q") = 0, py::arg("action") = "ACP",
        py::arg("mode") = "CC", py::arg("seed") = 0,
        "Seeded random instance as canonical JSON text.");
  m.def("reduce_dominating_set", &reduce_dominating_set, py::arg("vertices"), py::arg("edges"),
        py::arg("k"), py::arg("target"),
        "Dominating-set gadget instance (targets CC-ACP or CCFP-AOP).");
  m.def("reduce_clique", &reduce_clique, py::arg("vertices"), py::arg("edges"), py::arg("k"),
        py::arg("target"), "Clique gadget instance (targets CC-DOP or CCFP-DCP).");
  m.def("reduce_subset_sum", &reduce_subset_sum, py::arg("values"), py::arg("target_sum"),
        py::arg("k"), py::arg("target"),
        "Subset-sum gadget instance (targets the four CCFP variants).");
  m.def("verify", &verify_seeded, py::arg("seed") = 0, py::arg("count") = 16,
        py::arg("cap") = kDefaultCap,
        "Seeded sweep comparing every applicable solver against the oracle; "
        "returns the report as JSON text.");
  m.attr("__version__") = "1.0.0";

  py::register_exception<InstanceError>(m, "InstanceError", PyExc_ValueError);
  py::register_exception<QueryError>(m, "QueryError", PyExc_ValueError);
  py::register_exception<TieError>(m, "TieError", PyExc_ValueError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);
}
