#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace coalctrl {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Parses "a/b", a decimal string like "0.25", or a plain integer into an
/// exact rational. Throws InstanceError on malformed input.
Rat parse_rational(const std::string& text);

/// Canonical text form: "a" when the denominator is 1, otherwise "a/b".
std::string rational_str(const Rat& value);

/// Decides part/whole >= threshold by integer cross-multiplication.
/// whole must be positive.
bool at_least_fraction(std::int64_t part, std::int64_t whole, const Rat& threshold);

}  // namespace coalctrl
