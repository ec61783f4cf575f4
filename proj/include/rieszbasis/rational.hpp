#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

// Boost 1.74's mixed rational/integer equality templates recurse forever under
// C++20 rewritten comparisons; these exact overloads win overload resolution.
namespace boost {
inline bool operator==(const rational<std::int64_t>& a, std::int64_t b) {
  return a.denominator() == 1 && a.numerator() == b;
}
inline bool operator==(const rational<std::int64_t>& a, int b) { return a == static_cast<std::int64_t>(b); }
inline bool operator!=(const rational<std::int64_t>& a, std::int64_t b) { return !(a == b); }
inline bool operator!=(const rational<std::int64_t>& a, int b) { return !(a == b); }
}  // namespace boost

namespace rieszbasis {

/// Exact scalar for every coordinate and measure in the library.
using Rational = boost::rational<std::int64_t>;

/// Parses "p/q" or "p" (optional sign, no whitespace inside). Throws ParseError.
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& r);

double to_double(const Rational& r);

std::int64_t floor_to_int(const Rational& r);

std::int64_t lcm_int(std::int64_t a, std::int64_t b);

}  // namespace rieszbasis
