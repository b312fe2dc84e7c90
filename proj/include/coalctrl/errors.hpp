#pragma once

#include <stdexcept>

namespace coalctrl {

/// Invalid instance data (bad positions, malformed orders, bad counts, ...).
struct InstanceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid query against a valid instance: side mismatches, budget misuse,
/// or a solver asked to handle a shape it does not support.
struct QueryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A voter is exactly torn between two parties; strict preferences are a
/// model assumption, so this is never silently broken.
struct TieError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exhaustive enumeration would exceed the configured cap.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace coalctrl
