#include "coalctrl/io.hpp"

#include <algorithm>
#include <cctype>
#include <initializer_list>
#include <string_view>
#include <utility>

#include <json.hpp>

#include "coalctrl/ssp.hpp"

namespace coalctrl {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InstanceError(path + ": " + what);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<std::string_view> allowed) {
  for (const auto& item : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end()) {
      fail(path, "unknown field '" + item.key() + "'");
    }
  }
}

const json& member(const json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path, std::string("missing field '") + key + "'");
  return *it;
}

Rat rational_field(const json& v, const std::string& path) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::exception& e) {
      fail(path, e.what());
    }
  }
  if (v.is_number_float()) {
    fail(path, "floating-point literals are not exact; write the value as a rational string");
  }
  if (v.is_number_unsigned()) return Rat(v.get<std::uint64_t>());
  if (v.is_number_integer()) return Rat(v.get<std::int64_t>());
  fail(path, "expected a rational string or an integer");
}

std::int64_t int_field(const json& v, const std::string& path) {
  if (v.is_number_float() || (!v.is_number_integer() && !v.is_number_unsigned())) {
    fail(path, "expected an integer");
  }
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > std::uint64_t(INT64_MAX)) {
    fail(path, "integer out of range");
  }
  return v.get<std::int64_t>();
}

std::string string_field(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

bool bool_field(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected a boolean");
  return v.get<bool>();
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

std::vector<Party> parse_parties(const json& arr) {
  if (!arr.is_array() || arr.empty()) fail("parties", "expected a nonempty array");
  std::vector<Party> parties;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "parties[" + std::to_string(i) + "]";
    const json& pj = arr[i];
    if (!pj.is_object()) fail(path, "expected an object");
    check_keys(pj, path, {"id", "position", "coalition", "spoiler"});
    Party party;
    party.id = string_field(member(pj, path, "id"), path + ".id");
    party.is_coalition = bool_field(member(pj, path, "coalition"), path + ".coalition");
    if (pj.contains("spoiler")) {
      party.is_spoiler = bool_field(pj["spoiler"], path + ".spoiler");
    }
    if (pj.contains("position") && !pj["position"].is_null()) {
      party.position = rational_field(pj["position"], path + ".position");
    }
    parties.push_back(std::move(party));
  }
  return parties;
}

std::pair<std::vector<VoterBlock>, VoterRep> parse_voters(const json& vj,
                                                          const std::vector<Party>& parties) {
  if (!vj.is_object()) fail("voters", "expected an object");
  check_keys(vj, "voters", {"extensive", "ssp_peaks", "compact_bands"});
  const int reps = int(vj.contains("extensive")) + int(vj.contains("ssp_peaks")) +
                   int(vj.contains("compact_bands"));
  if (reps != 1) {
    fail("voters", "exactly one of 'extensive', 'ssp_peaks', 'compact_bands' is required");
  }

  std::vector<VoterBlock> blocks;
  if (vj.contains("extensive")) {
    const json& arr = vj["extensive"];
    if (!arr.is_array() || arr.empty()) fail("voters.extensive", "expected a nonempty array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "voters.extensive[" + std::to_string(i) + "]";
      const json& bj = arr[i];
      if (!bj.is_object()) fail(path, "expected an object");
      check_keys(bj, path, {"order", "count"});
      const json& oj = member(bj, path, "order");
      if (!oj.is_array()) fail(path + ".order", "expected an array of party ids");
      VoterBlock block;
      for (std::size_t r = 0; r < oj.size(); ++r) {
        block.order.push_back(string_field(oj[r], path + ".order[" + std::to_string(r) + "]"));
      }
      block.count = int_field(member(bj, path, "count"), path + ".count");
      blocks.push_back(std::move(block));
    }
    return {std::move(blocks), VoterRep::Extensive};
  }

  if (vj.contains("ssp_peaks")) {
    const json& arr = vj["ssp_peaks"];
    if (!arr.is_array() || arr.empty()) fail("voters.ssp_peaks", "expected a nonempty array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "voters.ssp_peaks[" + std::to_string(i) + "]";
      const json& bj = arr[i];
      if (!bj.is_object()) fail(path, "expected an object");
      check_keys(bj, path, {"peak", "count"});
      VoterBlock block;
      block.peak = rational_field(member(bj, path, "peak"), path + ".peak");
      block.count = int_field(member(bj, path, "count"), path + ".count");
      blocks.push_back(std::move(block));
    }
    return {std::move(blocks), VoterRep::SspPeaks};
  }

  // compact_bands: band indices refer to the structure built from the
  // declared party positions; blocks are materialized at band midpoints.
  const json& arr = vj["compact_bands"];
  if (!arr.is_array() || arr.empty()) fail("voters.compact_bands", "expected a nonempty array");
  for (const Party& p : parties) {
    if (!p.position) {
      fail("voters.compact_bands", "requires a position on every party ('" + p.id + "' has none)");
    }
  }
  std::vector<std::string> all_ids;
  for (const Party& p : parties) all_ids.push_back(p.id);
  const ElectionInstance skeleton(parties, {VoterBlock{std::move(all_ids), std::nullopt, 1}});
  const SspStructure s = build_structure(skeleton);
  CompactProfile profile;
  profile.counts.assign(s.bands.size(), 0);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = "voters.compact_bands[" + std::to_string(i) + "]";
    const json& bj = arr[i];
    if (!bj.is_object()) fail(path, "expected an object");
    check_keys(bj, path, {"band", "count"});
    const std::int64_t band = int_field(member(bj, path, "band"), path + ".band");
    if (band < 0 || band >= static_cast<std::int64_t>(s.bands.size())) {
      fail(path + ".band", "band index out of range (structure has " +
                               std::to_string(s.bands.size()) + " bands)");
    }
    const std::int64_t count = int_field(member(bj, path, "count"), path + ".count");
    if (count < 0) fail(path + ".count", "negative voter count");
    profile.counts[static_cast<std::size_t>(band)] += count;
  }
  return {extensive_from_compact(profile, s), VoterRep::CompactBands};
}

void reject_divider_peaks(const ElectionInstance& inst) {
  if (!inst.is_ssp()) return;
  const SspStructure s = build_structure(inst);
  for (std::size_t i = 0; i < inst.voters().size(); ++i) {
    const VoterBlock& block = inst.voters()[i];
    if (!block.peak) continue;
    try {
      band_of(s, *block.peak);
    } catch (const TieError&) {
      fail("voters.ssp_peaks[" + std::to_string(i) + "].peak",
           "peak " + rational_str(*block.peak) +
               " lies exactly on a preference divider (order is ambiguous)");
    }
  }
}

}  // namespace

std::string rep_name(VoterRep rep) {
  switch (rep) {
    case VoterRep::Extensive: return "extensive";
    case VoterRep::SspPeaks: return "ssp_peaks";
    case VoterRep::CompactBands: return "compact_bands";
  }
  return "?";
}

InstanceDocument parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InstanceError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("document", "expected a JSON object");
  check_keys(doc, "document", {"schema", "parties", "voters", "objective", "control"});
  if (int_field(member(doc, "document", "schema"), "schema") != 1) {
    fail("schema", "unsupported schema version (expected 1)");
  }

  std::vector<Party> parties = parse_parties(member(doc, "document", "parties"));
  auto [blocks, rep] = parse_voters(member(doc, "document", "voters"), parties);
  ElectionInstance inst(std::move(parties), std::move(blocks));
  if (rep == VoterRep::SspPeaks) reject_divider_peaks(inst);

  const json& oj = member(doc, "document", "objective");
  if (!oj.is_object()) fail("objective", "expected an object");
  check_keys(oj, "objective", {"phi", "rho", "favored"});
  const Rat phi = rational_field(member(oj, "objective", "phi"), "objective.phi");
  const Rat rho = rational_field(member(oj, "objective", "rho"), "objective.rho");
  std::optional<std::string> favored;
  if (oj.contains("favored") && !oj["favored"].is_null()) {
    favored = string_field(oj["favored"], "objective.favored");
  }
  ObjectiveSpec obj = make_objective(inst, phi, rho, favored);

  const json& cj = member(doc, "document", "control");
  if (!cj.is_object()) fail("control", "expected an object");
  check_keys(cj, "control", {"action", "mode", "k"});
  ControlQuery query;
  try {
    query.action = action_from_name(upper(string_field(member(cj, "control", "action"),
                                                       "control.action")));
    query.mode = mode_from_name(upper(string_field(member(cj, "control", "mode"),
                                                   "control.mode")));
  } catch (const InstanceError& e) {
    fail("control", e.what());
  }
  const std::int64_t k = int_field(member(cj, "control", "k"), "control.k");
  if (k < 0 || k > 1'000'000) fail("control.k", "budget out of range");
  query.budget = static_cast<int>(k);
  validate_query(inst, obj, query);

  return InstanceDocument{ProblemInstance{std::move(inst), std::move(obj), query}, rep};
}

std::string emit_instance(const ProblemInstance& problem, VoterRep rep) {
  const ElectionInstance& inst = problem.instance;
  ordered_json doc;
  doc["schema"] = 1;

  ordered_json parties = ordered_json::array();
  for (const Party& p : inst.parties()) {
    ordered_json pj;
    pj["id"] = p.id;
    if (p.position) pj["position"] = rational_str(*p.position);
    pj["coalition"] = p.is_coalition;
    pj["spoiler"] = p.is_spoiler;
    parties.push_back(std::move(pj));
  }
  doc["parties"] = std::move(parties);

  ordered_json voters;
  ordered_json arr = ordered_json::array();
  switch (rep) {
    case VoterRep::Extensive:
      for (const VoterBlock& block : inst.voters()) {
        if (block.order.empty()) {
          throw InstanceError("extensive output requires order-based voter blocks");
        }
        arr.push_back({{"order", block.order}, {"count", block.count}});
      }
      voters["extensive"] = std::move(arr);
      break;
    case VoterRep::SspPeaks:
      for (const VoterBlock& block : inst.voters()) {
        if (!block.peak) {
          throw InstanceError("ssp_peaks output requires peak-based voter blocks");
        }
        arr.push_back({{"peak", rational_str(*block.peak)}, {"count", block.count}});
      }
      voters["ssp_peaks"] = std::move(arr);
      break;
    case VoterRep::CompactBands: {
      const SspStructure s = build_structure(inst);
      const CompactProfile profile = compact_from_extensive(inst, s);
      for (std::size_t b = 0; b < profile.counts.size(); ++b) {
        if (profile.counts[b] == 0) continue;
        arr.push_back({{"band", b}, {"count", profile.counts[b]}});
      }
      voters["compact_bands"] = std::move(arr);
      break;
    }
  }
  doc["voters"] = std::move(voters);

  ordered_json obj;
  obj["phi"] = rational_str(problem.objective.phi);
  obj["rho"] = rational_str(problem.objective.rho);
  if (problem.objective.favored >= 0) {
    obj["favored"] = inst.party(problem.objective.favored).id;
  }
  doc["objective"] = std::move(obj);

  ordered_json control;
  control["action"] = action_name(problem.query.action);
  control["mode"] = mode_name(problem.query.mode);
  control["k"] = problem.query.budget;
  doc["control"] = std::move(control);

  return doc.dump(2) + "\n";
}

VoterRep natural_rep(const ElectionInstance& inst) {
  return inst.is_ssp() ? VoterRep::SspPeaks : VoterRep::Extensive;
}

}  // namespace coalctrl
