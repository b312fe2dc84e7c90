#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "coalctrl/model.hpp"

namespace coalctrl {

/// The eight decision problems: {CC, CCFP} x {ACP, AOP, DCP, DOP}.
enum class ControlProblem {
  CC_ACP,
  CC_AOP,
  CC_DCP,
  CC_DOP,
  CCFP_ACP,
  CCFP_AOP,
  CCFP_DCP,
  CCFP_DOP,
};

ControlProblem problem_of(Action action, Mode mode);
Action action_of(ControlProblem p);
Mode mode_of(ControlProblem p);
std::string problem_name(ControlProblem p);      // e.g. "CCFP-DCP"
ControlProblem problem_from_name(std::string_view name);

/// Simple undirected graph; vertices 0..vertex_count-1, edges stored with
/// endpoints normalized to (low, high). Duplicate edges and loops rejected.
struct Graph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;
};

void validate_graph(const Graph& g);

struct SubsetSumInstance {
  std::vector<std::int64_t> values;  // positive
  std::int64_t target = 0;           // positive
  int k = 0;                         // 0 <= k <= values.size()
};

void validate_subset_sum(const SubsetSumInstance& ssi);

/// Does some vertex subset of size <= k dominate the graph? (reference check)
bool has_dominating_set(const Graph& g, int k);
/// Largest edge count induced by any vertex subset of size <= k.
int max_internal_edges(const Graph& g, int k);
/// Is there a standard clique on exactly k vertices?
bool has_clique(const Graph& g, int k);
/// Does some value subset of size <= k sum exactly to the target?
bool has_subset_sum(const SubsetSumInstance& ssi);

/// Dominating-set gadget, general preferences. Targets CC-ACP (vertex
/// parties as coalition spoilers, phi = 1/2) or CCFP-AOP (vertex parties as
/// opposition spoilers, phi = rho = 1/2; odd vertex counts scale all voter
/// multiplicities by two to keep them integral). The gadget answer equals
/// "a dominating set of size <= k exists".
ProblemInstance dominating_set_gadget(const Graph& g, int k, ControlProblem target);

/// Clique gadget, general preferences, one voter per edge. Targets CC-DOP
/// (phi = k^2/m) or CCFP-DCP (phi = 1/2, rho = (m+k^2)/(2m)). The gadget
/// answer equals "some vertex subset of size <= k induces at least k^2
/// edges"; a threshold formula leaving (0,1] yields a trivial no-instance.
ProblemInstance clique_gadget(const Graph& g, int k, ControlProblem target);

/// Subset-sum gadget, single-peaked positions. Targets all four CCFP
/// variants; the gadget answer equals "some value subset of size <= k sums
/// exactly to the target". Value i gets a party pair (one toggleable, one
/// permanent) with a voter block of weight values[i] parked next to the pair;
/// a block of weight target (adding/DOP) or sum-target (AOP/DCP) sits by the
/// favored party.
ProblemInstance subset_sum_gadget(const SubsetSumInstance& ssi, ControlProblem target);

}  // namespace coalctrl
