#include <string>

#include "vig/detail/strutil.hpp"
#include "vig/error.hpp"
#include "vig/schema.hpp"

namespace vig {
namespace {

using detail::is_identifier;
using detail::split;
using detail::trim;

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw ParseError("schema line " + std::to_string(line_no) + ": " + what);
}

std::uint32_t resolve_table(const Schema& schema, std::string_view name, std::size_t line_no) {
  auto idx = schema.find_table(name);
  if (!idx) {
    throw ValidationError("schema line " + std::to_string(line_no) + ": unknown table '" +
                          std::string(name) + "'");
  }
  return *idx;
}

ColumnRef resolve_column(const Schema& schema, std::string_view table, std::string_view column,
                         std::size_t line_no) {
  std::uint32_t t = resolve_table(schema, table, line_no);
  auto c = schema.tables[t].find_column(column);
  if (!c) {
    throw ValidationError("schema line " + std::to_string(line_no) + ": unknown column '" +
                          std::string(table) + "." + std::string(column) + "'");
  }
  return ColumnRef{t, *c};
}

// `<name>(<inner>)` with nothing trailing; returns (name, inner).
std::pair<std::string_view, std::string_view> parse_call(std::string_view text,
                                                         std::size_t line_no) {
  std::size_t open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')')
    parse_fail(line_no, "expected 'name(...)'");
  std::string_view name = trim(text.substr(0, open));
  if (!is_identifier(name)) parse_fail(line_no, "bad identifier '" + std::string(name) + "'");
  return {name, text.substr(open + 1, text.size() - open - 2)};
}

// `<table>.<column>`, or `<table>(<c1>,...)` which is the multi-attribute
// form we reject with a dedicated message when more than one column appears.
std::pair<std::string_view, std::string_view> parse_fk_side(std::string_view text,
                                                            std::size_t line_no) {
  if (text.find('(') != std::string_view::npos) {
    auto [table, inner] = parse_call(text, line_no);
    auto cols = split(inner, ',');
    if (cols.size() != 1) throw ValidationError("multi-attribute foreign keys unsupported");
    return {table, trim(cols[0])};
  }
  std::size_t dot = text.find('.');
  if (dot == std::string_view::npos) parse_fail(line_no, "expected 'table.column'");
  return {trim(text.substr(0, dot)), trim(text.substr(dot + 1))};
}

void parse_table(Schema& schema, std::string_view body, std::size_t line_no) {
  auto [name, inner] = parse_call(body, line_no);
  Table table;
  table.name = std::string(name);
  for (std::string_view item : split(inner, ',')) {
    item = trim(item);
    if (item.empty()) parse_fail(line_no, "empty column declaration");
    std::size_t colon = item.find(':');
    if (colon == std::string_view::npos) parse_fail(line_no, "expected 'column:DATATYPE'");
    std::string_view col_name = trim(item.substr(0, colon));
    std::string_view type_part = trim(item.substr(colon + 1));
    if (!is_identifier(col_name))
      parse_fail(line_no, "bad column name '" + std::string(col_name) + "'");
    Column column;
    column.name = std::string(col_name);
    // `DATATYPE` optionally followed by the NULL marker.
    auto words = split(type_part, ' ');
    std::vector<std::string_view> tokens;
    for (auto w : words)
      if (!trim(w).empty()) tokens.push_back(trim(w));
    if (tokens.empty() || tokens.size() > 2) parse_fail(line_no, "expected 'DATATYPE [NULL]'");
    auto type = datatype_from_name(tokens[0]);
    if (!type) parse_fail(line_no, "unknown datatype '" + std::string(tokens[0]) + "'");
    column.type = *type;
    if (tokens.size() == 2) {
      if (detail::lower(tokens[1]) != "null")
        parse_fail(line_no, "expected NULL marker, got '" + std::string(tokens[1]) + "'");
      column.nullable = true;
    }
    table.columns.push_back(std::move(column));
  }
  schema.tables.push_back(std::move(table));
}

void parse_pk(Schema& schema, std::string_view body, std::size_t line_no) {
  auto [name, inner] = parse_call(body, line_no);
  std::uint32_t t = resolve_table(schema, name, line_no);
  Table& table = schema.tables[t];
  if (!table.primary_key.empty()) {
    throw ValidationError("schema line " + std::to_string(line_no) + ": table '" + table.name +
                          "' already has a primary key");
  }
  for (std::string_view col : split(inner, ',')) {
    table.primary_key.push_back(resolve_column(schema, name, trim(col), line_no).column);
  }
  if (table.primary_key.empty()) parse_fail(line_no, "empty primary key");
}

void parse_fk(Schema& schema, std::string_view body, std::size_t line_no) {
  std::size_t arrow = body.find("->");
  if (arrow == std::string_view::npos) parse_fail(line_no, "expected 'child -> parent'");
  auto [child_table, child_col] = parse_fk_side(trim(body.substr(0, arrow)), line_no);
  auto [parent_table, parent_col] = parse_fk_side(trim(body.substr(arrow + 2)), line_no);
  ForeignKey fk;
  fk.child = resolve_column(schema, child_table, child_col, line_no);
  fk.parent = resolve_column(schema, parent_table, parent_col, line_no);
  schema.foreign_keys.push_back(fk);
}

ColumnRef parse_column_target(Schema& schema, std::string_view body, std::size_t line_no) {
  std::size_t dot = body.find('.');
  if (dot == std::string_view::npos) parse_fail(line_no, "expected 'table.column'");
  return resolve_column(schema, trim(body.substr(0, dot)), trim(body.substr(dot + 1)), line_no);
}

}  // namespace

Schema load_schema(std::string_view text) {
  Schema schema;
  std::size_t line_no = 0;
  for (std::string_view raw_line : split(text, '\n')) {
    ++line_no;
    std::string_view line = trim(raw_line);
    if (line.empty() || line.front() == '#') continue;
    std::size_t space = line.find(' ');
    if (space == std::string_view::npos) parse_fail(line_no, "expected a statement");
    std::string_view keyword = line.substr(0, space);
    std::string_view body = trim(line.substr(space + 1));
    if (keyword == "table") {
      parse_table(schema, body, line_no);
    } else if (keyword == "pk") {
      parse_pk(schema, body, line_no);
    } else if (keyword == "fk") {
      parse_fk(schema, body, line_no);
    } else if (keyword == "unique") {
      ColumnRef ref = parse_column_target(schema, body, line_no);
      schema.tables[ref.table].columns[ref.column].unique_declared = true;
    } else if (keyword == "fixed") {
      ColumnRef ref = parse_column_target(schema, body, line_no);
      schema.tables[ref.table].columns[ref.column].fixed_domain_declared = true;
    } else {
      parse_fail(line_no, "unknown statement '" + std::string(keyword) + "'");
    }
  }
  schema.validate();
  return schema;
}

std::string serialize_schema(const Schema& schema) {
  std::string out;
  for (const Table& t : schema.tables) {
    out += "table " + t.name + "(";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      const Column& c = t.columns[i];
      if (i > 0) out += ", ";
      out += c.name + ":" + std::string(datatype_name(c.type));
      if (c.nullable) out += " NULL";
    }
    out += ")\n";
  }
  for (const Table& t : schema.tables) {
    if (t.primary_key.empty()) continue;
    out += "pk " + t.name + "(";
    for (std::size_t i = 0; i < t.primary_key.size(); ++i) {
      if (i > 0) out += ", ";
      out += t.columns[t.primary_key[i]].name;
    }
    out += ")\n";
  }
  for (const ForeignKey& fk : schema.foreign_keys) {
    out += "fk " + schema.column_display(fk.child) + " -> " +
           schema.column_display(fk.parent) + "\n";
  }
  for (ColumnRef ref : schema.all_columns()) {
    if (schema.column(ref).unique_declared) out += "unique " + schema.column_display(ref) + "\n";
  }
  for (ColumnRef ref : schema.all_columns()) {
    if (schema.column(ref).fixed_domain_declared)
      out += "fixed " + schema.column_display(ref) + "\n";
  }
  return out;
}

}  // namespace vig
