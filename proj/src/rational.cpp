#include "coalctrl/rational.hpp"

#include <cctype>

#include "coalctrl/errors.hpp"

namespace coalctrl {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rat parse_rational(const std::string& text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw InstanceError("malformed rational: '" + text + "'");

  Rat value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw InstanceError("malformed rational: '" + text + "'");
    }
    const BigInt d{std::string(den)};
    if (d == 0) throw InstanceError("zero denominator in rational: '" + text + "'");
    const BigInt n{std::string(num)};
    value = Rat(n, d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || !all_digits(frac)) {
      throw InstanceError("malformed rational: '" + text + "'");
    }
    BigInt scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const BigInt whole_part{std::string(whole)};
    const BigInt frac_part = frac.empty() ? BigInt(0) : BigInt{std::string(frac)};
    const BigInt num = whole_part * scale + frac_part;
    value = Rat(num, scale);
  } else {
    if (!all_digits(s)) throw InstanceError("malformed rational: '" + text + "'");
    const BigInt n{std::string(s)};
    value = Rat(n);
  }
  return negative ? Rat(-value) : value;
}

std::string rational_str(const Rat& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

bool at_least_fraction(std::int64_t part, std::int64_t whole, const Rat& threshold) {
  if (whole <= 0) throw QueryError("fraction comparison against a non-positive whole");
  const BigInt lhs = BigInt(part) * boost::multiprecision::denominator(threshold);
  const BigInt rhs = boost::multiprecision::numerator(threshold) * BigInt(whole);
  return lhs >= rhs;
}

}  // namespace coalctrl
