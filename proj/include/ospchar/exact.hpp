#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace ospc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "7", "-3", "1/2", "-5/4".
Rational parse_rational(std::string_view text);

// Always "num/den", den > 0.
std::string to_string(const Rational& r);
std::string to_string(const BigInt& b);

bool is_integer(const Rational& r);
BigInt floor_of(const Rational& r);
std::int64_t to_int64(const Rational& r);  // throws unless integral and in range
std::int64_t to_int64(const BigInt& b);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

}  // namespace ospc
