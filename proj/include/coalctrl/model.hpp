#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coalctrl/errors.hpp"
#include "coalctrl/rational.hpp"

namespace coalctrl {

/// Subset of parties, indexed by party position in the instance party list.
class PartySet {
 public:
  PartySet() = default;
  explicit PartySet(int universe) : bits_(universe, 0) {}
  static PartySet full(int universe);

  int universe() const { return static_cast<int>(bits_.size()); }
  int size() const { return count_; }
  bool empty() const { return count_ == 0; }
  bool contains(int p) const { return bits_[p] != 0; }
  void add(int p);
  void remove(int p);
  std::vector<int> members() const;

  bool operator==(const PartySet&) const = default;

 private:
  std::vector<char> bits_;
  int count_ = 0;
};

struct Party {
  std::string id;
  std::optional<Rat> position;  // spectrum coordinate in [0,1], SSP instances only
  bool is_coalition = false;
  bool is_spoiler = false;  // may enter (adding variants); never set in deleting instances
};

/// A group of voters sharing one preference. Exactly one of `order` / `peak`
/// is set: an explicit ranking over all party ids (best first), or a
/// single-peaked position on the spectrum.
struct VoterBlock {
  std::vector<std::string> order;
  std::optional<Rat> peak;
  std::int64_t count = 0;
};

enum class Action { ACP, AOP, DCP, DOP };
enum class Mode { CC, CCFP };

bool is_adding(Action a);
bool acts_on_coalition(Action a);
std::string action_name(Action a);
std::string mode_name(Mode m);
Action action_from_name(std::string_view name);
Mode mode_from_name(std::string_view name);

struct Tally {
  std::vector<std::int64_t> votes;  // size m, nonzero only for running parties
  PartySet running;
  std::int64_t total = 0;
};

struct ObjectiveSpec {
  PartySet coalition;
  Rat phi;          // coalition vote-share target, in (0,1]
  int favored = -1; // party index, set exactly when rho > 0
  Rat rho;          // favored-party share of the coalition total, in [0,1]
};

struct ControlQuery {
  Action action = Action::ACP;
  Mode mode = Mode::CC;
  int budget = 0;
};

struct ObjectiveEval {
  bool coalition_ok = false;
  bool favored_ok = false;
  std::int64_t coalition_votes = 0;
  std::int64_t favored_votes = 0;

  bool ok() const { return coalition_ok && favored_ok; }
};

class ElectionInstance {
 public:
  ElectionInstance(std::vector<Party> parties, std::vector<VoterBlock> voters);

  int party_count() const { return static_cast<int>(parties_.size()); }
  std::int64_t voter_count() const { return total_voters_; }
  const std::vector<Party>& parties() const { return parties_; }
  const Party& party(int p) const { return parties_[p]; }
  int index_of(std::string_view id) const;  // throws InstanceError on unknown id
  const std::vector<VoterBlock>& voters() const { return voters_; }

  /// True when every party has a position and voters are given as peaks.
  bool is_ssp() const { return ssp_; }
  /// True when every party carries a position (orders may still be explicit).
  bool fully_positioned() const { return positioned_; }
  /// Party indices sorted by ascending position (positioned instances only).
  const std::vector<int>& position_order() const;

  bool has_spoilers() const { return spoilers_; }
  PartySet permanent_set() const;
  PartySet full_set() const { return PartySet::full(party_count()); }

  /// Favorite running party of one voter block. Throws TieError when two
  /// running parties are exactly tied at the front.
  int top_of_block(int block, const PartySet& running) const;
  Tally tally(const PartySet& running) const;

 private:
  std::vector<Party> parties_;
  std::vector<VoterBlock> voters_;
  std::int64_t total_voters_ = 0;
  bool ssp_ = false;
  bool positioned_ = false;
  bool spoilers_ = false;
  std::vector<int> position_order_;
  // Per block, parties grouped best-first; a group holds equally preferred
  // parties (only peak blocks can produce groups of size > 1).
  std::vector<std::vector<std::vector<int>>> rank_groups_;
};

/// Favorite running party for an arbitrary block, computed from scratch
/// (explicit order lookup, or exact nearest-position comparison for peaks).
int top_party(const ElectionInstance& inst, const VoterBlock& block, const PartySet& running);

Tally tally(const ElectionInstance& inst, const PartySet& running);

/// Builds the coalition set from party flags and validates the objective.
ObjectiveSpec make_objective(const ElectionInstance& inst, const Rat& phi, const Rat& rho,
                             const std::optional<std::string>& favored_id);
void validate_objective(const ElectionInstance& inst, const ObjectiveSpec& obj);

/// Cross-field query validation (mode vs rho, spoiler placement, favored
/// party protection). Throws QueryError.
void validate_query(const ElectionInstance& inst, const ObjectiveSpec& obj,
                    const ControlQuery& query);

ObjectiveEval evaluate_objectives(const Tally& t, const ObjectiveSpec& obj);

/// Accepts totals (coalition, favored) against both objectives at once.
bool acceptable_totals(std::int64_t coalition_votes, std::int64_t favored_votes,
                       const ObjectiveSpec& obj, std::int64_t total_voters);

/// Running set before any action: permanent parties for adding variants,
/// everyone for deleting variants.
PartySet default_running(const ElectionInstance& inst, const ControlQuery& query);

/// Parties the action may legally touch, sorted by id.
std::vector<int> candidate_pool(const ElectionInstance& inst, const ObjectiveSpec& obj,
                                const ControlQuery& query);

/// Applies a chosen action set and returns the resulting running set.
/// Validates side membership, budget, duplicates, favored-party protection,
/// and that the result is nonempty.
PartySet apply_action(const ElectionInstance& inst, const ObjectiveSpec& obj,
                      const ControlQuery& query, const std::vector<int>& chosen);

/// Replays a claimed action set from scratch and evaluates both objectives.
ObjectiveEval resimulate(const ElectionInstance& inst, const ObjectiveSpec& obj,
                         const ControlQuery& query, const std::vector<int>& witness);

struct SolveOutcome {
  bool decision = false;
  std::vector<int> witness;  // action set, sorted by party id; empty on "no"
  std::int64_t coalition_votes = 0;  // achieved with the witness, or baseline on "no"
  std::int64_t favored_votes = 0;
  bool coalition_ok = false;
  bool favored_ok = false;
  std::string solver;
  bool immune = false;
  double wall_ms = 0.0;
  std::uint64_t table_entries = 0;
};

/// Packages a solver result. Every "yes" witness is replayed from scratch
/// here; a witness that fails re-simulation is a solver bug and throws.
SolveOutcome make_outcome(const ElectionInstance& inst, const ObjectiveSpec& obj,
                          const ControlQuery& query, bool decision, std::vector<int> witness,
                          std::string solver_name, bool immune);

/// Outcome for actions that provably cannot help: the budget-k answer equals
/// the do-nothing answer.
SolveOutcome immune_outcome(const ElectionInstance& inst, const ObjectiveSpec& obj,
                            const ControlQuery& query, std::string solver_name = "immune");

/// One fully specified decision problem.
struct ProblemInstance {
  ElectionInstance instance;
  ObjectiveSpec objective;
  ControlQuery query;
};

}  // namespace coalctrl
