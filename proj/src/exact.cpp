#include "ospchar/exact.hpp"

#include "ospchar/error.hpp"

#include <cctype>
#include <limits>

namespace ospc {

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) fail(ErrorCode::InvalidArgument, "malformed rational '" + std::string(whole) + "'");
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) fail(ErrorCode::InvalidArgument, "malformed rational '" + std::string(whole) + "'");
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      fail(ErrorCode::InvalidArgument, "malformed rational '" + std::string(whole) + "'");
    v = v * 10 + (s[i] - '0');
  }
  return neg ? BigInt(-v) : v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s, text));
  BigInt num = parse_integer(trim(s.substr(0, slash)), text);
  BigInt den = parse_integer(trim(s.substr(slash + 1)), text);
  if (den == 0) fail(ErrorCode::InvalidArgument, "zero denominator in '" + std::string(text) + "'");
  if (den < 0) num = -num, den = -den;
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

std::string to_string(const BigInt& b) { return b.str(); }

bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

BigInt floor_of(const Rational& r) {
  BigInt n = boost::multiprecision::numerator(r);
  BigInt d = boost::multiprecision::denominator(r);
  BigInt q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return q;
}

std::int64_t to_int64(const BigInt& b) {
  if (b > std::numeric_limits<std::int64_t>::max() || b < std::numeric_limits<std::int64_t>::min())
    fail(ErrorCode::Limit, "integer out of 64-bit range");
  return b.convert_to<std::int64_t>();
}

std::int64_t to_int64(const Rational& r) {
  if (!is_integer(r)) fail(ErrorCode::InvalidArgument, "expected an integer, got " + to_string(r));
  return to_int64(BigInt(boost::multiprecision::numerator(r)));
}

}  // namespace ospc
