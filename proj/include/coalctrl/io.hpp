#pragma once

#include <string>

#include "coalctrl/model.hpp"

namespace coalctrl {

/// How the voter profile is written in an instance file.
enum class VoterRep { Extensive, SspPeaks, CompactBands };

std::string rep_name(VoterRep rep);

struct InstanceDocument {
  ProblemInstance problem;
  VoterRep rep = VoterRep::Extensive;
};

/// Parses and fully validates a JSON instance document (schema 1). Error
/// messages name the offending field. Rationals must be strings ("a/b",
/// decimals, integers) or JSON integers; floating-point literals are
/// rejected to keep every quantity exact. Peaks sitting exactly on a
/// preference divider are rejected here, at the file boundary.
InstanceDocument parse_instance(const std::string& text);

/// Serializes an instance in the requested voter representation; the output
/// is canonical (fixed key order, exact rational strings) and round-trips
/// byte-identically through parse_instance + emit_instance.
std::string emit_instance(const ProblemInstance& problem, VoterRep rep);

/// The representation the instance's voter blocks are stored in.
VoterRep natural_rep(const ElectionInstance& inst);

}  // namespace coalctrl
