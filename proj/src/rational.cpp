#include "rieszbasis/rational.hpp"

#include <charconv>
#include <limits>
#include <numeric>

#include "rieszbasis/error.hpp"

namespace rieszbasis {

namespace {

std::int64_t parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ParseError("empty integer in rational '" + std::string(whole) + "'");
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw ParseError("malformed rational '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  const std::int64_t num = parse_integer(text.substr(0, slash), text);
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text.front() == '-') {
    throw ParseError("negative denominator in '" + std::string(text) + "'");
  }
  const std::int64_t den = parse_integer(den_text, text);
  if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::int64_t floor_to_int(const Rational& r) {
  const std::int64_t n = r.numerator();
  const std::int64_t d = r.denominator();
  std::int64_t q = n / d;
  if ((n % d != 0) && (n < 0)) --q;
  return q;
}

std::int64_t lcm_int(std::int64_t a, std::int64_t b) {
  const std::int64_t g = std::gcd(a, b);
  if (g == 0) return 0;
  const std::int64_t lhs = a / g;
  std::int64_t out = 0;
  if (__builtin_mul_overflow(lhs, b, &out)) throw CapError("lcm overflow");
  return out < 0 ? -out : out;
}

}  // namespace rieszbasis
