#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace seifert {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  return Rational(Integer(num), Integer(den));
}

/// "a/b" in lowest terms, or "a" when the denominator is 1.
std::string to_string(const Rational& q);

/// Parses "a", "-a", "a/b". Throws seifert::InputError on malformed text.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

bool is_integer(const Rational& q);

/// Largest integer <= q.
Integer floor(const Rational& q);

/// q - floor(q), in [0, 1).
Rational frac(const Rational& q);

/// Lexicographic comparison, shorter vector first on a common prefix.
bool lex_less(const RationalVector& a, const RationalVector& b);

}  // namespace seifert
