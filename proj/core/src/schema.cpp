#include "vig/schema.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "vig/error.hpp"

namespace vig {

std::optional<std::uint32_t> Table::find_column(std::string_view column_name) const {
  for (std::uint32_t i = 0; i < columns.size(); ++i) {
    if (columns[i].name == column_name) return i;
  }
  return std::nullopt;
}

std::optional<std::uint32_t> Schema::find_table(std::string_view table_name) const {
  for (std::uint32_t i = 0; i < tables.size(); ++i) {
    if (tables[i].name == table_name) return i;
  }
  return std::nullopt;
}

std::string Schema::column_display(ColumnRef ref) const {
  return tables[ref.table].name + "." + tables[ref.table].columns[ref.column].name;
}

bool Schema::is_unique_column(ColumnRef ref) const {
  if (column(ref).unique_declared) return true;
  const Table& t = table(ref);
  return t.primary_key.size() == 1 && t.primary_key[0] == ref.column;
}

std::vector<ColumnRef> Schema::all_columns() const {
  std::vector<ColumnRef> out;
  for (std::uint32_t t = 0; t < tables.size(); ++t) {
    for (std::uint32_t c = 0; c < tables[t].columns.size(); ++c) out.push_back({t, c});
  }
  return out;
}

std::vector<ColumnRef> Schema::closure_star(ColumnRef ref) const {
  std::set<ColumnRef> seen{ref};
  std::vector<ColumnRef> frontier{ref};
  while (!frontier.empty()) {
    ColumnRef cur = frontier.back();
    frontier.pop_back();
    for (const ForeignKey& fk : foreign_keys) {
      ColumnRef other;
      if (fk.child == cur) {
        other = fk.parent;
      } else if (fk.parent == cur) {
        other = fk.child;
      } else {
        continue;
      }
      if (seen.insert(other).second) frontier.push_back(other);
    }
  }
  return std::vector<ColumnRef>(seen.begin(), seen.end());
}

void Schema::validate() const {
  if (tables.empty()) throw ValidationError("no tables");

  std::unordered_set<std::string> table_names;
  for (const Table& t : tables) {
    if (!table_names.insert(t.name).second)
      throw ValidationError("duplicate table '" + t.name + "'");
    std::unordered_set<std::string> column_names;
    for (const Column& c : t.columns) {
      if (!column_names.insert(c.name).second)
        throw ValidationError("duplicate column '" + t.name + "." + c.name + "'");
    }
    if (t.columns.empty()) throw ValidationError("table '" + t.name + "' has no columns");

    std::unordered_set<std::uint32_t> pk_members;
    for (std::uint32_t idx : t.primary_key) {
      if (idx >= t.columns.size())
        throw ValidationError("primary key of '" + t.name + "' references a missing column");
      if (!pk_members.insert(idx).second)
        throw ValidationError("duplicate primary key column '" + t.name + "." +
                              t.columns[idx].name + "'");
      if (t.columns[idx].nullable)
        throw ValidationError("nullable primary key column '" + t.name + "." +
                              t.columns[idx].name + "'");
    }
  }

  for (const ForeignKey& fk : foreign_keys) {
    if (fk.child.table >= tables.size() || fk.parent.table >= tables.size() ||
        fk.child.column >= tables[fk.child.table].columns.size() ||
        fk.parent.column >= tables[fk.parent.table].columns.size())
      throw ValidationError("foreign key references a missing column");
    if (fk.child == fk.parent)
      throw ValidationError("foreign key on '" + column_display(fk.child) +
                            "' references itself");
    if (column(fk.child).type != column(fk.parent).type)
      throw ValidationError("foreign key datatype mismatch: " + column_display(fk.child) +
                            " -> " + column_display(fk.parent));
    if (!is_unique_column(fk.parent))
      throw ValidationError("foreign key parent '" + column_display(fk.parent) +
                            "' is not a single-column primary key or declared unique");
  }
}

}  // namespace vig
