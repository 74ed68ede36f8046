#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace vig {

enum class Datatype { Integer, Decimal, Text, Date, Boolean };

std::string_view datatype_name(Datatype t);
std::optional<Datatype> datatype_from_name(std::string_view name);

// Days since 1970-01-01 for a proleptic Gregorian civil date.
std::int64_t days_from_civil(int y, unsigned m, unsigned d);
void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d);

// Lexical checks/parses for seed-data fields.  Parsers return nullopt on
// malformed input; the caller decides whether that is a parse error or a
// signal to fall back to TEXT handling.
std::optional<std::int64_t> parse_int64(std::string_view text);

// DECIMAL fields are carried as scaled integers: "12.50" -> (1250, scale 2).
struct DecimalValue {
  std::int64_t unscaled = 0;
  unsigned scale = 0;
};
std::optional<DecimalValue> parse_decimal(std::string_view text);
std::string render_decimal(std::int64_t unscaled, unsigned scale);

// "YYYY-MM-DD" -> days since epoch.
std::optional<std::int64_t> parse_date(std::string_view text);
std::string render_date(std::int64_t days);

// true/false/t/f/1/0, case-insensitive.
std::optional<bool> parse_bool(std::string_view text);

// Canonical display form of a field, used both for value comparisons
// (distinct counting, joins) and as the exact output spelling: INTEGER and
// DATE normalized, DECIMAL with trailing fractional zeros stripped, BOOLEAN
// as true/false, TEXT verbatim.  nullopt when text does not parse.
std::optional<std::string> canonical_value(Datatype type, std::string_view text);

}  // namespace vig
