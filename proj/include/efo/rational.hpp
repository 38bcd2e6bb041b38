#pragma once

// Exact rational arithmetic used for every monetary value in the library.
// No floating point participates in any solver decision; doubles appear only
// as advisory approximations in serialized output.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace efo {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational positive_part(const Rational& d) {
  return d > 0 ? d : Rational(0);
}

inline Rational make_rational(long long num, long long den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

// Canonical text form: "p/q" in lowest terms, or just "p" when q == 1.
inline std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

inline double to_double(const Rational& r) {
  return r.convert_to<double>();
}

// Accepts "p", "-p", "p/q", and plain decimals like "0.25". Returns nullopt on
// malformed text (including q == 0).
inline std::optional<Rational> parse_rational(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::size_t slash = text.find('/');
  std::size_t dot = text.find('.');
  if (slash != std::string::npos && dot != std::string::npos) return std::nullopt;

  auto parse_int = [](const std::string& s) -> std::optional<BigInt> {
    if (s.empty()) return std::nullopt;
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) return std::nullopt;
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return std::nullopt;
    try {
      return BigInt(s);
    } catch (...) {
      return std::nullopt;
    }
  };

  if (slash != std::string::npos) {
    auto num = parse_int(text.substr(0, slash));
    auto den = parse_int(text.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    return Rational(*num, *den);
  }
  if (dot != std::string::npos) {
    std::string head = text.substr(0, dot);
    std::string tail = text.substr(dot + 1);
    if (tail.empty()) return std::nullopt;
    bool neg = !head.empty() && head[0] == '-';
    if (head.empty() || head == "-" || head == "+") head += '0';
    auto whole = parse_int(head);
    auto frac = parse_int(tail);
    if (!whole || !frac || tail.find_first_of("+-") != std::string::npos)
      return std::nullopt;
    BigInt scale = 1;
    for (std::size_t i = 0; i < tail.size(); ++i) scale *= 10;
    BigInt num = *whole * scale + (neg ? -*frac : *frac);
    return Rational(num, scale);
  }
  auto num = parse_int(text);
  if (!num) return std::nullopt;
  return Rational(*num);
}

}  // namespace efo
