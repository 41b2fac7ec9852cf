#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "chillag/errors.hpp"

namespace chillag {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_integral(const Rational &q) { return denominator(q) == 1; }

inline double to_double(const Rational &q) { return q.convert_to<double>(); }

/// Lowest terms, `p` or `p/q`.
inline std::string to_string(const Rational &q) {
  if (denominator(q) == 1)
    return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+'))
      ++i;
    if (i == s.size())
      throw Error(ErrorKind::ParseError, "bad integer '" + std::string(s) + "'");
    for (std::size_t j = i; j < s.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j])))
        throw Error(ErrorKind::ParseError, "bad integer '" + std::string(s) + "'");
    return Integer(std::string(s[0] == '+' ? s.substr(1) : s));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return Rational(parse_int(text));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0)
    throw Error(ErrorKind::ParseError, "zero denominator");
  return Rational(parse_int(text.substr(0, slash)), den);
}

} // namespace chillag
