#include "vig/datatype.hpp"

#include <array>
#include <charconv>
#include <cstdio>

#include "vig/detail/strutil.hpp"

namespace vig {

std::string_view datatype_name(Datatype t) {
  switch (t) {
    case Datatype::Integer: return "INTEGER";
    case Datatype::Decimal: return "DECIMAL";
    case Datatype::Text:    return "TEXT";
    case Datatype::Date:    return "DATE";
    case Datatype::Boolean: return "BOOLEAN";
  }
  return "?";
}

std::optional<Datatype> datatype_from_name(std::string_view name) {
  std::string up;
  up.reserve(name.size());
  for (char c : name) up.push_back(c >= 'a' && c <= 'z' ? static_cast<char>(c - 32) : c);
  if (up == "INTEGER") return Datatype::Integer;
  if (up == "DECIMAL") return Datatype::Decimal;
  if (up == "TEXT")    return Datatype::Text;
  if (up == "DATE")    return Datatype::Date;
  if (up == "BOOLEAN") return Datatype::Boolean;
  return std::nullopt;
}

// Howard Hinnant's branchless civil-date algorithms; exact over the full
// proleptic Gregorian range we care about.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);                   // [0, 399]
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;         // [0, 365]
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;                  // [0, 146096]
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);                // [0, 146096]
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;  // [0, 399]
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);                // [0, 365]
  const unsigned mp = (5 * doy + 2) / 153;                                     // [0, 11]
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y = static_cast<int>(yy + (m <= 2));
}

std::optional<std::int64_t> parse_int64(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

std::optional<DecimalValue> parse_decimal(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool neg = false;
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') {
    neg = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) return std::nullopt;
  std::int64_t unscaled = 0;
  unsigned scale = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_dot) return std::nullopt;
      seen_dot = true;
      continue;
    }
    if (c < '0' || c > '9') return std::nullopt;
    seen_digit = true;
    if (unscaled > (INT64_MAX - 9) / 10) return std::nullopt;  // overflow guard
    unscaled = unscaled * 10 + (c - '0');
    if (seen_dot) ++scale;
  }
  if (!seen_digit) return std::nullopt;
  return DecimalValue{neg ? -unscaled : unscaled, scale};
}

std::string render_decimal(std::int64_t unscaled, unsigned scale) {
  bool neg = unscaled < 0;
  std::uint64_t mag = neg ? 0 - static_cast<std::uint64_t>(unscaled)
                          : static_cast<std::uint64_t>(unscaled);
  std::string digits = std::to_string(mag);
  if (scale == 0) return neg ? "-" + digits : digits;
  if (digits.size() <= scale) digits.insert(0, scale - digits.size() + 1, '0');
  digits.insert(digits.size() - scale, 1, '.');
  return neg ? "-" + digits : digits;
}

std::optional<std::int64_t> parse_date(std::string_view text) {
  // Strict YYYY-MM-DD (4-2-2 digits).
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto digits = [&](std::size_t off, std::size_t len, unsigned& out) {
    out = 0;
    for (std::size_t i = off; i < off + len; ++i) {
      char c = text[i];
      if (c < '0' || c > '9') return false;
      out = out * 10 + static_cast<unsigned>(c - '0');
    }
    return true;
  };
  unsigned y, m, d;
  if (!digits(0, 4, y) || !digits(5, 2, m) || !digits(8, 2, d)) return std::nullopt;
  if (m < 1 || m > 12 || d < 1 || d > 31) return std::nullopt;
  std::int64_t days = days_from_civil(static_cast<int>(y), m, d);
  // Reject e.g. 2021-02-30 by round-tripping.
  int ry;
  unsigned rm, rd;
  civil_from_days(days, ry, rm, rd);
  if (ry != static_cast<int>(y) || rm != m || rd != d) return std::nullopt;
  return days;
}

std::string render_date(std::int64_t days) {
  int y;
  unsigned m, d;
  civil_from_days(days, y, m, d);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", y, m, d);
  return buf;
}

std::optional<bool> parse_bool(std::string_view text) {
  std::string low = detail::lower(text);
  if (low == "true" || low == "t" || low == "1") return true;
  if (low == "false" || low == "f" || low == "0") return false;
  return std::nullopt;
}

std::optional<std::string> canonical_value(Datatype type, std::string_view text) {
  switch (type) {
    case Datatype::Integer: {
      auto v = parse_int64(text);
      if (!v) return std::nullopt;
      return std::to_string(*v);
    }
    case Datatype::Decimal: {
      auto v = parse_decimal(text);
      if (!v) return std::nullopt;
      while (v->scale > 0 && v->unscaled % 10 == 0) {
        v->unscaled /= 10;
        --v->scale;
      }
      return render_decimal(v->unscaled, v->scale);
    }
    case Datatype::Text:
      return std::string(text);
    case Datatype::Date: {
      auto days = parse_date(text);
      if (!days) return std::nullopt;
      return render_date(*days);
    }
    case Datatype::Boolean: {
      auto v = parse_bool(text);
      if (!v) return std::nullopt;
      return *v ? "true" : "false";
    }
  }
  return std::nullopt;
}

}  // namespace vig
