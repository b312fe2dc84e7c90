#include "coalctrl/reductions.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <limits>
#include <set>
#include <utility>

namespace coalctrl {
namespace {

ProblemInstance assemble(std::vector<Party> parties, std::vector<VoterBlock> blocks,
                         const Rat& phi, const Rat& rho, std::optional<std::string> favored,
                         Action action, Mode mode, int budget) {
  ElectionInstance inst(std::move(parties), std::move(blocks));
  ObjectiveSpec obj = make_objective(inst, phi, rho, favored);
  ControlQuery query{action, mode, budget};
  validate_query(inst, obj, query);
  return ProblemInstance{std::move(inst), std::move(obj), query};
}

/// Two-party instance whose answer is fixed regardless of the (empty-budget)
/// action: the single voter sits next to the coalition party on "yes" and
/// next to the opposition party on "no".
ProblemInstance canonical_trivial(ControlProblem target, bool yes) {
  const Mode mode = mode_of(target);
  std::vector<Party> parties{
      Party{"c", Rat(1, 4), true, false},
      Party{"o", Rat(3, 4), false, false},
  };
  VoterBlock block;
  block.peak = yes ? Rat(1, 8) : Rat(7, 8);
  block.count = 1;
  const Rat rho = mode == Mode::CCFP ? Rat(1) : Rat(0);
  std::optional<std::string> favored;
  if (mode == Mode::CCFP) favored = "c";
  return assemble(std::move(parties), {block}, Rat(1), rho, std::move(favored),
                  action_of(target), mode, 0);
}

std::string padded_id(char prefix, int index, int max_index) {
  const std::string digits = std::to_string(index);
  const std::size_t width = std::to_string(max_index).size();
  std::string id(1, prefix);
  id.append(width - digits.size(), '0');
  id += digits;
  return id;
}

std::vector<std::vector<int>> closed_neighborhoods(const Graph& g) {
  std::vector<std::vector<int>> nbr(g.vertex_count);
  for (int v = 0; v < g.vertex_count; ++v) nbr[v].push_back(v);
  for (const auto& [a, b] : g.edges) {
    nbr[a].push_back(b);
    nbr[b].push_back(a);
  }
  for (auto& list : nbr) std::sort(list.begin(), list.end());
  return nbr;
}

void check_budget(int k, int limit, const char* what) {
  if (k < 0 || k > limit)
    throw InstanceError(std::string("budget k out of range for ") + what + " gadget");
}

constexpr int kReferenceVertexCap = 25;

void check_reference_size(const Graph& g) {
  if (g.vertex_count > kReferenceVertexCap)
    throw CapacityError("reference graph check supports at most 25 vertices");
}

int edges_inside(const Graph& g, std::uint32_t mask) {
  int count = 0;
  for (const auto& [a, b] : g.edges)
    if ((mask >> a & 1u) && (mask >> b & 1u)) ++count;
  return count;
}

}  // namespace

ControlProblem problem_of(Action action, Mode mode) {
  int base = mode == Mode::CC ? 0 : 4;
  switch (action) {
    case Action::ACP: break;
    case Action::AOP: base += 1; break;
    case Action::DCP: base += 2; break;
    case Action::DOP: base += 3; break;
  }
  return static_cast<ControlProblem>(base);
}

Action action_of(ControlProblem p) {
  switch (static_cast<int>(p) % 4) {
    case 0: return Action::ACP;
    case 1: return Action::AOP;
    case 2: return Action::DCP;
    default: return Action::DOP;
  }
}

Mode mode_of(ControlProblem p) {
  return static_cast<int>(p) < 4 ? Mode::CC : Mode::CCFP;
}

std::string problem_name(ControlProblem p) {
  return mode_name(mode_of(p)) + "-" + action_name(action_of(p));
}

ControlProblem problem_from_name(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (int i = 0; i < 8; ++i) {
    auto p = static_cast<ControlProblem>(i);
    std::string candidate = problem_name(p);
    std::transform(candidate.begin(), candidate.end(), candidate.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == candidate) return p;
  }
  throw QueryError("unknown problem name: " + std::string(name));
}

void validate_graph(const Graph& g) {
  if (g.vertex_count < 1) throw InstanceError("graph needs at least one vertex");
  std::set<std::pair<int, int>> seen;
  for (const auto& [a, b] : g.edges) {
    if (a < 0 || a >= g.vertex_count || b < 0 || b >= g.vertex_count)
      throw InstanceError("edge endpoint out of range");
    if (a == b) throw InstanceError("self-loop edges are not allowed");
    auto norm = std::minmax(a, b);
    if (!seen.insert({norm.first, norm.second}).second)
      throw InstanceError("duplicate edge");
  }
}

void validate_subset_sum(const SubsetSumInstance& ssi) {
  if (ssi.values.empty()) throw InstanceError("subset-sum needs at least one value");
  for (auto v : ssi.values)
    if (v < 1) throw InstanceError("subset-sum values must be positive");
  if (ssi.target < 1) throw InstanceError("subset-sum target must be positive");
  if (ssi.k < 0 || ssi.k > static_cast<int>(ssi.values.size()))
    throw InstanceError("subset-sum size bound k out of range");
}

bool has_dominating_set(const Graph& g, int k) {
  validate_graph(g);
  check_reference_size(g);
  check_budget(k, g.vertex_count, "dominating-set");
  const auto nbr = closed_neighborhoods(g);
  const std::uint32_t all = (1u << g.vertex_count) - 1;
  for (std::uint32_t mask = 0; mask <= all; ++mask) {
    if (std::popcount(mask) > k) continue;
    std::uint32_t covered = 0;
    for (int v = 0; v < g.vertex_count; ++v)
      if (mask >> v & 1u)
        for (int w : nbr[v]) covered |= 1u << w;
    if (covered == all) return true;
  }
  return false;
}

int max_internal_edges(const Graph& g, int k) {
  validate_graph(g);
  check_reference_size(g);
  check_budget(k, g.vertex_count, "internal-edge");
  const std::uint32_t all = (1u << g.vertex_count) - 1;
  int best = 0;
  for (std::uint32_t mask = 0; mask <= all; ++mask)
    if (std::popcount(mask) <= k) best = std::max(best, edges_inside(g, mask));
  return best;
}

bool has_clique(const Graph& g, int k) {
  validate_graph(g);
  check_reference_size(g);
  check_budget(k, g.vertex_count, "clique");
  if (k <= 1) return true;  // empty set / single vertex
  std::vector<std::vector<char>> adj(g.vertex_count, std::vector<char>(g.vertex_count, 0));
  for (const auto& [a, b] : g.edges) adj[a][b] = adj[b][a] = 1;
  const std::uint32_t all = (1u << g.vertex_count) - 1;
  for (std::uint32_t mask = 0; mask <= all; ++mask) {
    if (std::popcount(mask) != k) continue;
    bool ok = true;
    for (int a = 0; a < g.vertex_count && ok; ++a)
      if (mask >> a & 1u)
        for (int b = a + 1; b < g.vertex_count && ok; ++b)
          if ((mask >> b & 1u) && !adj[a][b]) ok = false;
    if (ok) return true;
  }
  return false;
}

bool has_subset_sum(const SubsetSumInstance& ssi) {
  validate_subset_sum(ssi);
  if (ssi.target > 1'000'000)
    throw CapacityError("reference subset-sum check supports targets up to 1e6");
  const int limit = ssi.k;
  const auto target = static_cast<std::size_t>(ssi.target);
  // reach[s][c] = some c values sum to s
  std::vector<std::vector<char>> reach(target + 1, std::vector<char>(limit + 1, 0));
  reach[0][0] = 1;
  for (auto value : ssi.values) {
    if (value > ssi.target) continue;
    const auto v = static_cast<std::size_t>(value);
    for (std::size_t s = target; s >= v; --s)
      for (int c = limit; c >= 1; --c)
        if (reach[s - v][c - 1]) reach[s][c] = 1;
  }
  for (int c = 0; c <= limit; ++c)
    if (reach[target][c]) return true;
  return false;
}

ProblemInstance dominating_set_gadget(const Graph& g, int k, ControlProblem target) {
  validate_graph(g);
  check_budget(k, g.vertex_count, "dominating-set");
  if (target != ControlProblem::CC_ACP && target != ControlProblem::CCFP_AOP)
    throw QueryError("dominating-set gadget targets CC-ACP or CCFP-AOP");
  const int n = g.vertex_count;
  const auto nbr = closed_neighborhoods(g);
  std::vector<std::string> vid(n);
  for (int v = 0; v < n; ++v) vid[v] = padded_id('v', v + 1, n);

  std::vector<Party> parties;
  std::vector<VoterBlock> blocks;
  auto vertex_order = [&](int i, const std::string& first_fixed,
                          const std::string& second_fixed) {
    std::vector<std::string> order;
    std::vector<char> inside(n, 0);
    for (int w : nbr[i]) inside[w] = 1;
    for (int w : nbr[i]) order.push_back(vid[w]);
    order.push_back(first_fixed);
    order.push_back(second_fixed);
    for (int w = 0; w < n; ++w)
      if (!inside[w]) order.push_back(vid[w]);
    return order;
  };

  if (target == ControlProblem::CC_ACP) {
    // Vertex parties are coalition spoilers; every vertex voter reaches the
    // coalition exactly when some closed neighbor has been added.
    parties.push_back(Party{"p1", std::nullopt, true, false});
    parties.push_back(Party{"p2", std::nullopt, false, false});
    for (int v = 0; v < n; ++v) parties.push_back(Party{vid[v], std::nullopt, true, true});
    for (int i = 0; i < n; ++i)
      blocks.push_back(VoterBlock{vertex_order(i, "p2", "p1"), std::nullopt, 1});
    std::vector<std::string> fixed{"p2", "p1"};
    for (int v = 0; v < n; ++v) fixed.push_back(vid[v]);
    blocks.push_back(VoterBlock{std::move(fixed), std::nullopt, n});
    return assemble(std::move(parties), std::move(blocks), Rat(1, 2), Rat(0), std::nullopt,
                    Action::ACP, Mode::CC, k);
  }

  // CCFP-AOP: vertex parties are opposition spoilers; the favored party keeps
  // half the coalition total exactly when no added vertex steals a voter,
  // i.e. when the added set dominates nothing -- so a YES needs every vertex
  // voter pulled away, which is domination. Odd vertex counts double every
  // multiplicity so the p1/p2 blocks stay integral.
  const std::int64_t w = n % 2 == 0 ? 1 : 2;
  const std::int64_t h = n % 2 == 0 ? n / 2 : n;
  parties.push_back(Party{"p1", std::nullopt, true, false});
  parties.push_back(Party{"p2", std::nullopt, true, false});
  for (int v = 0; v < n; ++v) parties.push_back(Party{vid[v], std::nullopt, false, true});
  std::vector<std::string> p1_first{"p1", "p2"};
  std::vector<std::string> p2_first{"p2", "p1"};
  for (int v = 0; v < n; ++v) {
    p1_first.push_back(vid[v]);
    p2_first.push_back(vid[v]);
  }
  blocks.push_back(VoterBlock{std::move(p1_first), std::nullopt, h});
  blocks.push_back(VoterBlock{std::move(p2_first), std::nullopt, h});
  for (int i = 0; i < n; ++i)
    blocks.push_back(VoterBlock{vertex_order(i, "p2", "p1"), std::nullopt, w});
  return assemble(std::move(parties), std::move(blocks), Rat(1, 2), Rat(1, 2), "p1",
                  Action::AOP, Mode::CCFP, k);
}

ProblemInstance clique_gadget(const Graph& g, int k, ControlProblem target) {
  validate_graph(g);
  check_budget(k, g.vertex_count, "clique");
  if (target != ControlProblem::CC_DOP && target != ControlProblem::CCFP_DCP)
    throw QueryError("clique gadget targets CC-DOP or CCFP-DCP");
  const int n = g.vertex_count;
  const auto m = static_cast<std::int64_t>(g.edges.size());
  if (m == 0) throw InstanceError("clique gadget needs at least one edge");
  const auto ksq = static_cast<std::int64_t>(k) * k;
  if (ksq > m) return canonical_trivial(target, false);  // threshold would exceed 1
  if (target == ControlProblem::CC_DOP && k == 0)
    return canonical_trivial(target, true);  // zero-edge demand holds vacuously

  std::vector<std::string> vid(n);
  for (int v = 0; v < n; ++v) vid[v] = padded_id('v', v + 1, n);
  auto edges = g.edges;
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());

  std::vector<Party> parties;
  std::vector<VoterBlock> blocks;
  const bool dcp = target == ControlProblem::CCFP_DCP;
  parties.push_back(Party{"p1", std::nullopt, true, false});
  if (dcp) parties.push_back(Party{"p2", std::nullopt, false, false});
  for (int v = 0; v < n; ++v) parties.push_back(Party{vid[v], std::nullopt, dcp, false});

  for (const auto& [a, b] : edges) {
    std::vector<std::string> order{vid[a], vid[b], "p1"};
    if (dcp) order.push_back("p2");
    for (int v = 0; v < n; ++v)
      if (v != a && v != b) order.push_back(vid[v]);
    blocks.push_back(VoterBlock{std::move(order), std::nullopt, 1});
  }
  if (dcp) {
    std::vector<std::string> p1_first{"p1", "p2"};
    std::vector<std::string> p2_first{"p2", "p1"};
    for (int v = 0; v < n; ++v) {
      p1_first.push_back(vid[v]);
      p2_first.push_back(vid[v]);
    }
    blocks.push_back(VoterBlock{std::move(p1_first), std::nullopt, m});
    blocks.push_back(VoterBlock{std::move(p2_first), std::nullopt, 2 * m});
    // Deleting both endpoints of an edge hands that voter to the favored
    // party; the share target is met exactly when k^2 edges collapse.
    return assemble(std::move(parties), std::move(blocks), Rat(1, 2), Rat(m + ksq, 2 * m),
                    "p1", Action::DCP, Mode::CCFP, k);
  }
  return assemble(std::move(parties), std::move(blocks), Rat(ksq, m), Rat(0), std::nullopt,
                  Action::DOP, Mode::CC, k);
}

ProblemInstance subset_sum_gadget(const SubsetSumInstance& ssi, ControlProblem target) {
  validate_subset_sum(ssi);
  if (mode_of(target) != Mode::CCFP)
    throw QueryError("subset-sum gadget targets the CCFP variants");
  const Action action = action_of(target);
  const int m = static_cast<int>(ssi.values.size());
  BigInt sum = 0;
  for (auto v : ssi.values) sum += v;
  if (sum > std::numeric_limits<std::int64_t>::max() / 2)
    throw CapacityError("subset-sum values overflow the voter total");
  const auto total = sum.convert_to<std::int64_t>();
  if (total < ssi.target) return canonical_trivial(target, false);

  const bool opposes_sum = action == Action::AOP || action == Action::DCP;
  // AOP/DCP count the complement: an exact hit needs 0 < target < sum there.
  if (opposes_sum && total == ssi.target)
    return canonical_trivial(target, ssi.k >= m);

  const Rat u(1, 4 * (m + 1));
  const std::int64_t anchor = opposes_sum ? total - ssi.target : ssi.target;
  const Rat phi = Rat(2 * anchor) / Rat(anchor + total);

  // Toggleable party t_i and its permanent shadow q_i sit one unit apart;
  // the weighted voter block leans an eighth of a unit toward whichever of
  // the pair the action can flip it to.
  const bool adding = is_adding(action);
  const bool toggle_in_coalition = acts_on_coalition(action);
  std::vector<Party> parties;
  parties.push_back(Party{"f", u / 2, true, false});
  std::vector<VoterBlock> blocks;
  blocks.push_back(VoterBlock{{}, u * 3 / 8, anchor});
  for (int i = 1; i <= m; ++i) {
    const Rat t_pos = u * (4 * i + 1);
    const Rat q_pos = u * (4 * i + 2);
    std::string t_id = padded_id(adding ? 's' : 'b', i, m);
    std::string q_id = padded_id(adding ? 'b' : 's', i, m);
    if (adding) {
      // spoiler at t_pos; voters lean toward it from the shadow's side
      parties.push_back(Party{t_id, t_pos, toggle_in_coalition, true});
      parties.push_back(Party{q_id, q_pos, !toggle_in_coalition, false});
      blocks.push_back(VoterBlock{{}, t_pos + u / 8, ssi.values[i - 1]});
    } else {
      // deletable party at q_pos; voters lean toward it from the shadow's side
      parties.push_back(Party{q_id, t_pos, !toggle_in_coalition, false});
      parties.push_back(Party{t_id, q_pos, toggle_in_coalition, false});
      blocks.push_back(VoterBlock{{}, q_pos - u / 8, ssi.values[i - 1]});
    }
  }
  return assemble(std::move(parties), std::move(blocks), phi, Rat(1, 2), "f", action,
                  Mode::CCFP, ssi.k);
}

}  // namespace coalctrl
