#include "seifert/rational.hpp"

#include "seifert/error.hpp"

#include <algorithm>
#include <cctype>

namespace seifert {

std::string to_string(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw InputError("rational", "", "malformed rational '" + std::string(whole) + "'");
  Integer value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw InputError("rational", "", "malformed rational '" + std::string(whole) + "'");
    value = value * 10 + (text[i] - '0');
  }
  return negative ? Integer(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s, s));
  const Integer num = parse_integer(trim(s.substr(0, slash)), s);
  const Integer den = parse_integer(trim(s.substr(slash + 1)), s);
  if (den == 0) throw InputError("rational", "", "zero denominator in '" + std::string(s) + "'");
  return Rational(num, den);
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

bool is_integer(const Rational& q) { return boost::multiprecision::denominator(q) == 1; }

Integer floor(const Rational& q) {
  const Integer num = boost::multiprecision::numerator(q);
  const Integer den = boost::multiprecision::denominator(q);
  Integer quot = num / den;  // truncates toward zero
  if (num < 0 && quot * den != num) quot -= 1;
  return quot;
}

Rational frac(const Rational& q) { return q - Rational(floor(q)); }

bool lex_less(const RationalVector& a, const RationalVector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace seifert
