#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace nhm {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

namespace detail {

/// Optional sign followed by decimal digits; leading zeros are not octal.
inline BigInt parse_integer(std::string_view s, bool allow_sign = true) {
  bool negative = false;
  if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw std::invalid_argument("empty integer");
  BigInt v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("bad digit");
    v = v * 10 + (ch - '0');
  }
  return negative ? BigInt(-v) : v;
}

}  // namespace detail

/// Parses "p/q", "p" or a plain decimal such as "-0.25" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto bad = [&]() { return std::invalid_argument("not a rational: \"" + s + "\""); };
  if (s.empty()) throw bad();
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      BigInt num = detail::parse_integer(std::string_view(s).substr(0, slash));
      BigInt den = detail::parse_integer(std::string_view(s).substr(slash + 1));
      if (den == 0) throw bad();
      return Rational(num, den);
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
      std::string_view whole = std::string_view(s).substr(0, dot);
      std::string_view frac = std::string_view(s).substr(dot + 1);
      bool negative = !whole.empty() && whole[0] == '-';
      if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.remove_prefix(1);
      if (whole.empty() && frac.empty()) throw bad();
      BigInt num = (whole.empty() ? BigInt(0) : detail::parse_integer(whole, false));
      BigInt den = 1;
      for (char ch : frac) {
        if (ch < '0' || ch > '9') throw bad();
        num = num * 10 + (ch - '0');
        den *= 10;
      }
      return Rational(negative ? BigInt(-num) : num, den);
    }
    return Rational(detail::parse_integer(s));
  } catch (const std::exception&) {
    throw bad();
  }
}

/// Canonical text form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

}  // namespace nhm
