#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "vig/error.hpp"

namespace vig {

// Exact nonnegative scale factor, always reduced, den >= 1.
struct Rational {
  std::uint64_t num = 1;
  std::uint64_t den = 1;

  static Rational of(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw ParseError("rational with zero denominator");
    std::uint64_t g = std::gcd(num, den);
    if (g == 0) g = 1;
    return Rational{num / g, den / g};
  }

  // Accepts "2", "0.5", "3/2".
  static Rational parse(std::string_view text);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_zero() const { return num == 0; }

  friend bool operator==(const Rational&, const Rational&) = default;
};

// round_half_up(count * s), exact in 128-bit intermediates.
inline std::uint64_t scale_round_half_up(std::uint64_t count, Rational s) {
  using u128 = unsigned __int128;
  u128 scaled = static_cast<u128>(count) * s.num;
  return static_cast<std::uint64_t>((2 * scaled + s.den) / (2 * static_cast<u128>(s.den)));
}

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&] { throw ParseError("invalid scale factor '" + std::string(text) + "'"); };
  if (text.empty()) fail();
  std::size_t slash = text.find('/');
  if (slash != std::string_view::npos) {
    std::string_view a = text.substr(0, slash);
    std::string_view b = text.substr(slash + 1);
    if (a.empty() || b.empty()) fail();
    std::uint64_t num = 0, den = 0;
    for (char c : a) {
      if (c < '0' || c > '9') fail();
      num = num * 10 + static_cast<std::uint64_t>(c - '0');
    }
    for (char c : b) {
      if (c < '0' || c > '9') fail();
      den = den * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return of(num, den);
  }
  std::size_t dot = text.find('.');
  std::uint64_t num = 0, den = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i == dot) continue;
    char c = text[i];
    if (c < '0' || c > '9') fail();
    num = num * 10 + static_cast<std::uint64_t>(c - '0');
    if (dot != std::string_view::npos && i > dot) den *= 10;
  }
  if (dot != std::string_view::npos && dot + 1 == text.size()) fail();
  return of(num, den);
}

}  // namespace vig
