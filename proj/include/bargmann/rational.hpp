#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

namespace bargmann {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  return Rational(BigInt(num), BigInt(den));
}

/// Converts an exact value to the working scalar with a single rounding
/// (for built-in floating types) or by exact division (multiprecision).
template <class Scalar>
Scalar rational_to(const Rational& r) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return r;
  } else if constexpr (std::is_floating_point_v<Scalar>) {
    return r.template convert_to<Scalar>();
  } else {
    return Scalar(boost::multiprecision::numerator(r)) /
           Scalar(boost::multiprecision::denominator(r));
  }
}

template <class Scalar>
Scalar integer_to(const BigInt& v) {
  if constexpr (std::is_floating_point_v<Scalar>) {
    return v.template convert_to<Scalar>();
  } else {
    return Scalar(v);
  }
}

/// Parses "p/q" or "p" (optionally signed). Throws std::invalid_argument.
inline Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    std::int64_t value = 0;
    if (!part.empty() && part.front() == '+') part.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size())
      throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
    return value;
  };
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return make_rational(parse_int(text));
  return make_rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

inline std::string to_string(const Rational& r) { return r.str(); }

inline bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

}  // namespace bargmann
