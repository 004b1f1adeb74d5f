#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "hirota/errors.hpp"

namespace hirota {

/// Exact rational scalar. GMP keeps every value canonical (reduced, positive
/// denominator, zero as 0/1) as long as construction goes through the helpers
/// below or mpq arithmetic.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "a", "-a" or "a/b" with decimal integers a, b (b != 0).
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto first = s.find_first_not_of(" \t");
  auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) throw ParseError("empty rational literal");
  s = s.substr(first, last - first + 1);
  if (s.front() == '+') s.erase(0, 1);
  auto valid_integer = [](std::string_view v) {
    if (!v.empty() && v.front() == '-') v.remove_prefix(1);
    if (v.empty()) return false;
    for (char c : v)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den.front() == '-')
    throw ParseError("malformed rational literal '" + std::string(text) + "'");
  Integer d(den, 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational r{Integer(num, 10), d};
  r.canonicalize();
  return r;
}

/// "num/den", with "/1" omitted.
inline std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

}  // namespace hirota
