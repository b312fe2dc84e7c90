#include "coalctrl/model.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

namespace coalctrl {

PartySet PartySet::full(int universe) {
  PartySet s(universe);
  std::fill(s.bits_.begin(), s.bits_.end(), char(1));
  s.count_ = universe;
  return s;
}

void PartySet::add(int p) {
  if (!bits_[p]) {
    bits_[p] = 1;
    ++count_;
  }
}

void PartySet::remove(int p) {
  if (bits_[p]) {
    bits_[p] = 0;
    --count_;
  }
}

std::vector<int> PartySet::members() const {
  std::vector<int> out;
  out.reserve(count_);
  for (int p = 0; p < universe(); ++p) {
    if (bits_[p]) out.push_back(p);
  }
  return out;
}

bool is_adding(Action a) { return a == Action::ACP || a == Action::AOP; }

bool acts_on_coalition(Action a) { return a == Action::ACP || a == Action::DCP; }

std::string action_name(Action a) {
  switch (a) {
    case Action::ACP: return "ACP";
    case Action::AOP: return "AOP";
    case Action::DCP: return "DCP";
    case Action::DOP: return "DOP";
  }
  return "?";
}

std::string mode_name(Mode m) { return m == Mode::CC ? "CC" : "CCFP"; }

Action action_from_name(std::string_view name) {
  if (name == "ACP") return Action::ACP;
  if (name == "AOP") return Action::AOP;
  if (name == "DCP") return Action::DCP;
  if (name == "DOP") return Action::DOP;
  throw InstanceError("unknown action '" + std::string(name) + "' (expected ACP, AOP, DCP or DOP)");
}

Mode mode_from_name(std::string_view name) {
  if (name == "CC") return Mode::CC;
  if (name == "CCFP") return Mode::CCFP;
  throw InstanceError("unknown mode '" + std::string(name) + "' (expected CC or CCFP)");
}

namespace {

Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

}  // namespace

ElectionInstance::ElectionInstance(std::vector<Party> parties, std::vector<VoterBlock> voters)
    : parties_(std::move(parties)) {
  if (parties_.empty()) throw InstanceError("parties: at least one party is required");

  std::map<std::string, int> by_id;
  for (int p = 0; p < party_count(); ++p) {
    const Party& party = parties_[p];
    if (party.id.empty()) throw InstanceError("parties: empty party id");
    if (!by_id.emplace(party.id, p).second) {
      throw InstanceError("parties: duplicate party id '" + party.id + "'");
    }
    if (party.is_spoiler) spoilers_ = true;
    if (party.position) {
      if (*party.position < 0 || *party.position > 1) {
        throw InstanceError("parties: position of '" + party.id + "' is " +
                            rational_str(*party.position) + ", outside [0,1]");
      }
    }
  }

  positioned_ = std::all_of(parties_.begin(), parties_.end(),
                            [](const Party& p) { return p.position.has_value(); });
  if (positioned_) {
    position_order_.resize(party_count());
    for (int p = 0; p < party_count(); ++p) position_order_[p] = p;
    std::sort(position_order_.begin(), position_order_.end(), [&](int a, int b) {
      return *parties_[a].position < *parties_[b].position;
    });
    for (size_t i = 1; i < position_order_.size(); ++i) {
      const Party& a = parties_[position_order_[i - 1]];
      const Party& b = parties_[position_order_[i]];
      if (*a.position == *b.position) {
        throw InstanceError("parties: '" + a.id + "' and '" + b.id +
                            "' share position " + rational_str(*a.position));
      }
    }
  }

  bool any_order = false;
  bool any_peak = false;
  for (const VoterBlock& block : voters) {
    if (block.count < 0) throw InstanceError("voters: negative block count");
    if (block.count == 0) continue;
    const bool has_order = !block.order.empty();
    const bool has_peak = block.peak.has_value();
    if (has_order == has_peak) {
      throw InstanceError("voters: each block needs exactly one of 'order' or 'peak'");
    }
    any_order |= has_order;
    any_peak |= has_peak;
    voters_.push_back(block);
    total_voters_ += block.count;
  }
  if (total_voters_ == 0) throw InstanceError("voters: at least one voter is required");
  if (any_order && any_peak) {
    throw InstanceError("voters: explicit orders and peaks cannot be mixed in one instance");
  }
  if (any_peak && !positioned_) {
    throw InstanceError("voters: peak-based voters require a position on every party");
  }
  ssp_ = any_peak;

  rank_groups_.reserve(voters_.size());
  for (const VoterBlock& block : voters_) {
    std::vector<std::vector<int>> groups;
    if (!block.order.empty()) {
      if (static_cast<int>(block.order.size()) != party_count()) {
        throw InstanceError("voters: order lists " + std::to_string(block.order.size()) +
                            " parties, expected " + std::to_string(party_count()));
      }
      std::set<int> seen;
      for (const std::string& id : block.order) {
        auto it = by_id.find(id);
        if (it == by_id.end()) throw InstanceError("voters: order names unknown party '" + id + "'");
        if (!seen.insert(it->second).second) {
          throw InstanceError("voters: order repeats party '" + id + "'");
        }
        groups.push_back({it->second});
      }
    } else {
      const Rat& h = *block.peak;
      if (h < 0 || h > 1) {
        throw InstanceError("voters: peak " + rational_str(h) + " is outside [0,1]");
      }
      // Sort parties by exact distance from the peak; equal distances form
      // one group and only ever surface as an error if both are running on top.
      std::vector<int> order(parties_.size());
      for (int p = 0; p < party_count(); ++p) order[p] = p;
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return abs_rat(h - *parties_[a].position) < abs_rat(h - *parties_[b].position);
      });
      for (int p : order) {
        const Rat d = abs_rat(h - *parties_[p].position);
        if (!groups.empty()) {
          const Rat d_prev = abs_rat(h - *parties_[groups.back().front()].position);
          if (d == d_prev) {
            groups.back().push_back(p);
            continue;
          }
        }
        groups.push_back({p});
      }
    }
    rank_groups_.push_back(std::move(groups));
  }
}

int ElectionInstance::index_of(std::string_view id) const {
  for (int p = 0; p < party_count(); ++p) {
    if (parties_[p].id == id) return p;
  }
  throw InstanceError("unknown party id '" + std::string(id) + "'");
}

const std::vector<int>& ElectionInstance::position_order() const {
  if (!positioned_) throw InstanceError("instance has unpositioned parties");
  return position_order_;
}

PartySet ElectionInstance::permanent_set() const {
  PartySet s(party_count());
  for (int p = 0; p < party_count(); ++p) {
    if (!parties_[p].is_spoiler) s.add(p);
  }
  return s;
}

int ElectionInstance::top_of_block(int block, const PartySet& running) const {
  for (const std::vector<int>& group : rank_groups_[block]) {
    int found = -1;
    for (int p : group) {
      if (!running.contains(p)) continue;
      if (found >= 0) {
        const VoterBlock& vb = voters_[block];
        throw TieError("voter peak " + rational_str(*vb.peak) + " is equidistant from '" +
                       parties_[found].id + "' and '" + parties_[p].id + "'");
      }
      found = p;
    }
    if (found >= 0) return found;
  }
  throw QueryError("running set is empty");
}

Tally ElectionInstance::tally(const PartySet& running) const {
  if (running.universe() != party_count()) {
    throw QueryError("running set sized for a different instance");
  }
  if (running.empty()) throw QueryError("running set is empty");
  Tally t;
  t.votes.assign(party_count(), 0);
  t.running = running;
  t.total = total_voters_;
  for (size_t b = 0; b < voters_.size(); ++b) {
    t.votes[top_of_block(static_cast<int>(b), running)] += voters_[b].count;
  }
  return t;
}

int top_party(const ElectionInstance& inst, const VoterBlock& block, const PartySet& running) {
  if (running.empty()) throw QueryError("running set is empty");
  if (!block.order.empty()) {
    for (const std::string& id : block.order) {
      const int p = inst.index_of(id);
      if (running.contains(p)) return p;
    }
    throw QueryError("order does not cover the running set");
  }
  if (!block.peak) throw InstanceError("voter block has neither order nor peak");
  int best = -1;
  bool tied = false;
  Rat best_d;
  for (int p : running.members()) {
    const Rat d = abs_rat(*block.peak - *inst.party(p).position);
    if (best < 0 || d < best_d) {
      best = p;
      best_d = d;
      tied = false;
    } else if (d == best_d) {
      tied = true;
    }
  }
  if (tied) {
    throw TieError("voter peak " + rational_str(*block.peak) +
                   " is equidistant from two running parties");
  }
  return best;
}

Tally tally(const ElectionInstance& inst, const PartySet& running) { return inst.tally(running); }

ObjectiveSpec make_objective(const ElectionInstance& inst, const Rat& phi, const Rat& rho,
                             const std::optional<std::string>& favored_id) {
  ObjectiveSpec obj;
  obj.coalition = PartySet(inst.party_count());
  for (int p = 0; p < inst.party_count(); ++p) {
    if (inst.party(p).is_coalition) obj.coalition.add(p);
  }
  obj.phi = phi;
  obj.rho = rho;
  obj.favored = favored_id ? inst.index_of(*favored_id) : -1;
  validate_objective(inst, obj);
  return obj;
}

void validate_objective(const ElectionInstance& inst, const ObjectiveSpec& obj) {
  if (obj.coalition.universe() != inst.party_count()) {
    throw InstanceError("objective: coalition set sized for a different instance");
  }
  if (obj.coalition.empty()) throw InstanceError("objective: coalition is empty");
  if (obj.phi <= 0 || obj.phi > 1) {
    throw InstanceError("objective: phi = " + rational_str(obj.phi) + ", outside (0,1]");
  }
  if (obj.rho < 0 || obj.rho > 1) {
    throw InstanceError("objective: rho = " + rational_str(obj.rho) + ", outside [0,1]");
  }
  if ((obj.rho > 0) != (obj.favored >= 0)) {
    throw InstanceError("objective: favored party must be given exactly when rho > 0");
  }
  if (obj.favored >= 0 && !obj.coalition.contains(obj.favored)) {
    throw InstanceError("objective: favored party '" + inst.party(obj.favored).id +
                        "' is not in the coalition");
  }
}

void validate_query(const ElectionInstance& inst, const ObjectiveSpec& obj,
                    const ControlQuery& query) {
  validate_objective(inst, obj);
  if (query.budget < 0) throw QueryError("control: budget is negative");
  if ((query.mode == Mode::CCFP) != (obj.rho > 0)) {
    throw QueryError("control: mode " + mode_name(query.mode) + " conflicts with rho = " +
                     rational_str(obj.rho));
  }
  if (is_adding(query.action)) {
    if (obj.favored >= 0 && inst.party(obj.favored).is_spoiler) {
      throw QueryError("control: favored party '" + inst.party(obj.favored).id +
                       "' must be permanent in adding variants");
    }
  } else if (inst.has_spoilers()) {
    throw QueryError("control: spoiler-flagged parties are only valid in adding variants");
  }
}

ObjectiveEval evaluate_objectives(const Tally& t, const ObjectiveSpec& obj) {
  ObjectiveEval eval;
  for (int p = 0; p < t.running.universe(); ++p) {
    if (obj.coalition.contains(p)) eval.coalition_votes += t.votes[p];
  }
  eval.favored_votes = obj.favored >= 0 ? t.votes[obj.favored] : 0;
  eval.coalition_ok = at_least_fraction(eval.coalition_votes, t.total, obj.phi);
  if (obj.rho == 0) {
    eval.favored_ok = true;
  } else if (eval.coalition_votes == 0) {
    // rho * 0 = 0, so an empty-handed coalition satisfies the ratio vacuously.
    eval.favored_ok = true;
  } else {
    eval.favored_ok = at_least_fraction(eval.favored_votes, eval.coalition_votes, obj.rho);
  }
  return eval;
}

bool acceptable_totals(std::int64_t coalition_votes, std::int64_t favored_votes,
                       const ObjectiveSpec& obj, std::int64_t total_voters) {
  if (!at_least_fraction(coalition_votes, total_voters, obj.phi)) return false;
  if (obj.rho == 0 || coalition_votes == 0) return true;
  return at_least_fraction(favored_votes, coalition_votes, obj.rho);
}

PartySet default_running(const ElectionInstance& inst, const ControlQuery& query) {
  return is_adding(query.action) ? inst.permanent_set() : inst.full_set();
}

std::vector<int> candidate_pool(const ElectionInstance& inst, const ObjectiveSpec& obj,
                                const ControlQuery& query) {
  std::vector<int> pool;
  for (int p = 0; p < inst.party_count(); ++p) {
    const bool coalition = obj.coalition.contains(p);
    switch (query.action) {
      case Action::ACP:
        if (inst.party(p).is_spoiler && coalition) pool.push_back(p);
        break;
      case Action::AOP:
        if (inst.party(p).is_spoiler && !coalition) pool.push_back(p);
        break;
      case Action::DCP:
        if (coalition && !(obj.rho > 0 && p == obj.favored)) pool.push_back(p);
        break;
      case Action::DOP:
        if (!coalition) pool.push_back(p);
        break;
    }
  }
  std::sort(pool.begin(), pool.end(),
            [&](int a, int b) { return inst.party(a).id < inst.party(b).id; });
  return pool;
}

PartySet apply_action(const ElectionInstance& inst, const ObjectiveSpec& obj,
                      const ControlQuery& query, const std::vector<int>& chosen) {
  validate_query(inst, obj, query);
  if (static_cast<int>(chosen.size()) > query.budget) {
    throw QueryError("action set of size " + std::to_string(chosen.size()) +
                     " exceeds budget " + std::to_string(query.budget));
  }
  std::set<int> uniq(chosen.begin(), chosen.end());
  if (uniq.size() != chosen.size()) throw QueryError("action set repeats a party");

  PartySet running = default_running(inst, query);
  for (int p : chosen) {
    if (p < 0 || p >= inst.party_count()) throw QueryError("action set names an unknown party");
    const bool coalition = obj.coalition.contains(p);
    switch (query.action) {
      case Action::ACP:
      case Action::AOP:
        if (!inst.party(p).is_spoiler) {
          throw QueryError("party '" + inst.party(p).id + "' is permanent and cannot be added");
        }
        if (coalition != acts_on_coalition(query.action)) {
          throw QueryError("party '" + inst.party(p).id + "' is on the wrong side for " +
                           action_name(query.action));
        }
        running.add(p);
        break;
      case Action::DCP:
      case Action::DOP:
        if (coalition != acts_on_coalition(query.action)) {
          throw QueryError("party '" + inst.party(p).id + "' is on the wrong side for " +
                           action_name(query.action));
        }
        if (obj.rho > 0 && p == obj.favored) {
          throw QueryError("favored party '" + inst.party(p).id + "' cannot be deleted");
        }
        running.remove(p);
        break;
    }
  }
  if (running.empty()) throw QueryError("action set would leave no party running");
  return running;
}

ObjectiveEval resimulate(const ElectionInstance& inst, const ObjectiveSpec& obj,
                         const ControlQuery& query, const std::vector<int>& witness) {
  const PartySet running = apply_action(inst, obj, query, witness);
  return evaluate_objectives(inst.tally(running), obj);
}

SolveOutcome make_outcome(const ElectionInstance& inst, const ObjectiveSpec& obj,
                          const ControlQuery& query, bool decision, std::vector<int> witness,
                          std::string solver_name, bool immune) {
  SolveOutcome out;
  out.decision = decision;
  out.solver = std::move(solver_name);
  out.immune = immune;
  if (!decision) witness.clear();
  std::sort(witness.begin(), witness.end(),
            [&](int a, int b) { return inst.party(a).id < inst.party(b).id; });
  const ObjectiveEval eval = resimulate(inst, obj, query, witness);
  if (decision && !eval.ok()) {
    throw std::logic_error("solver '" + out.solver + "' returned a witness that fails re-simulation");
  }
  out.witness = std::move(witness);
  out.coalition_votes = eval.coalition_votes;
  out.favored_votes = eval.favored_votes;
  out.coalition_ok = eval.coalition_ok;
  out.favored_ok = eval.favored_ok;
  return out;
}

SolveOutcome immune_outcome(const ElectionInstance& inst, const ObjectiveSpec& obj,
                            const ControlQuery& query, std::string solver_name) {
  const ObjectiveEval baseline = resimulate(inst, obj, query, {});
  return make_outcome(inst, obj, query, baseline.ok(), {}, std::move(solver_name), true);
}

}  // namespace coalctrl
