#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vig/datatype.hpp"

namespace vig {

// Position of a column inside a Schema; cheap to copy, totally ordered so it
// can key maps and define canonical representatives.
struct ColumnRef {
  std::uint32_t table = 0;
  std::uint32_t column = 0;

  friend auto operator<=>(const ColumnRef&, const ColumnRef&) = default;
};

struct Column {
  std::string name;
  Datatype type = Datatype::Text;
  bool nullable = false;
  bool fixed_domain_declared = false;  // `fixed t.c` statement
  bool unique_declared = false;        // `unique t.c` statement

  friend bool operator==(const Column&, const Column&) = default;
};

struct Table {
  std::string name;
  std::vector<Column> columns;
  std::vector<std::uint32_t> primary_key;  // column indexes; empty = no PK

  std::optional<std::uint32_t> find_column(std::string_view column_name) const;

  friend bool operator==(const Table&, const Table&) = default;
};

// Single-column foreign key; multi-attribute FKs are rejected at load.
struct ForeignKey {
  ColumnRef child;
  ColumnRef parent;

  friend bool operator==(const ForeignKey&, const ForeignKey&) = default;
};

struct Schema {
  std::vector<Table> tables;
  std::vector<ForeignKey> foreign_keys;

  std::optional<std::uint32_t> find_table(std::string_view table_name) const;
  const Table& table(ColumnRef ref) const { return tables[ref.table]; }
  const Column& column(ColumnRef ref) const { return tables[ref.table].columns[ref.column]; }
  std::string column_display(ColumnRef ref) const;  // "table.column"

  // True if ref can anchor a foreign key: its table's single-column primary
  // key, or a column declared unique.
  bool is_unique_column(ColumnRef ref) const;

  std::vector<ColumnRef> all_columns() const;

  // Equivalence class of ref under the foreign-key relation taken
  // undirected, closed reflexively and transitively.  Result is sorted.
  std::vector<ColumnRef> closure_star(ColumnRef ref) const;

  // Enforces every structural invariant; throws ValidationError naming the
  // offending table or column.
  void validate() const;

  friend bool operator==(const Schema&, const Schema&) = default;
};

// Parses the schema document format (one statement per line: table / pk /
// fk / unique / fixed, `#` comments) and validates the result.
Schema load_schema(std::string_view text);

// Canonical re-serialization; load_schema(serialize_schema(s)) == s.
std::string serialize_schema(const Schema& schema);

}  // namespace vig
