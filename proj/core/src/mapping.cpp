#include "vig/mapping.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "vig/detail/strutil.hpp"
#include "vig/error.hpp"

namespace vig {
namespace {

using detail::is_identifier;
using detail::split_top_level;
using detail::trim;

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what) {
  throw ParseError("mappings line " + std::to_string(line_no) + ": " + what);
}

[[noreturn]] void resolve_fail(std::size_t line_no, const std::string& what) {
  throw ValidationError("mappings line " + std::to_string(line_no) + ": " + what);
}

std::pair<std::string_view, std::string_view> parse_call(std::string_view text,
                                                         std::size_t line_no) {
  std::size_t open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')')
    parse_fail(line_no, "expected 'name(...)' in '" + std::string(text) + "'");
  std::string_view name = trim(text.substr(0, open));
  if (!is_identifier(name)) parse_fail(line_no, "bad identifier '" + std::string(name) + "'");
  return {name, text.substr(open + 1, text.size() - open - 2)};
}

// `'constant'` (no escapes) or a variable identifier.
TermArg parse_term_arg(std::string_view text, std::size_t line_no) {
  TermArg arg;
  if (text.size() >= 2 && text.front() == '\'' && text.back() == '\'') {
    arg.is_constant = true;
    arg.constant = std::string(text.substr(1, text.size() - 2));
    return arg;
  }
  if (!is_identifier(text)) parse_fail(line_no, "bad term argument '" + std::string(text) + "'");
  arg.variable = std::string(text);
  return arg;
}

using VariableBindings = std::unordered_map<std::string, ColumnRef>;

ColumnRef resolve_variable(const VariableBindings& bindings, const std::string& variable,
                           std::size_t line_no) {
  auto it = bindings.find(variable);
  if (it == bindings.end())
    resolve_fail(line_no, "variable '" + variable + "' is not bound by any source atom");
  return it->second;
}

MappingAssertion parse_line(std::string_view line, const Schema& schema, std::size_t line_no) {
  std::size_t arrow = line.find("<-");
  if (arrow == std::string_view::npos) parse_fail(line_no, "expected '<-'");
  std::string_view target = trim(line.substr(0, arrow));
  std::string_view source = trim(line.substr(arrow + 2));

  MappingAssertion assertion;
  auto [predicate, terms_text] = parse_call(target, line_no);
  assertion.predicate = std::string(predicate);
  for (std::string_view term_text : split_top_level(terms_text, ',')) {
    term_text = trim(term_text);
    Template term;
    if (term_text.find('(') != std::string_view::npos) {
      auto [symbol, args_text] = parse_call(term_text, line_no);
      term.symbol = std::string(symbol);
      for (std::string_view arg_text : split_top_level(args_text, ','))
        term.args.push_back(parse_term_arg(trim(arg_text), line_no));
      if (term.args.empty()) parse_fail(line_no, "template '" + term.symbol + "' has no arguments");
    } else {
      term.args.push_back(parse_term_arg(term_text, line_no));
    }
    assertion.target_terms.push_back(std::move(term));
  }
  if (assertion.target_terms.empty() || assertion.target_terms.size() > 2)
    parse_fail(line_no, "target must have one term (class) or two (property)");

  // Source: atoms first, then filters; variables bind positionally and the
  // first binding wins for resolution.
  VariableBindings bindings;
  for (std::string_view item : split_top_level(source, ',')) {
    item = trim(item);
    if (item.empty()) parse_fail(line_no, "empty source item");
    std::size_t eq = item.find('=');
    if (item.find('(') != std::string_view::npos) {
      auto [table_name, vars_text] = parse_call(item, line_no);
      auto table_idx = schema.find_table(table_name);
      if (!table_idx) resolve_fail(line_no, "unknown table '" + std::string(table_name) + "'");
      SourceAtom atom;
      atom.table = *table_idx;
      for (std::string_view var : split_top_level(vars_text, ',')) {
        var = trim(var);
        if (!is_identifier(var)) parse_fail(line_no, "bad variable '" + std::string(var) + "'");
        atom.variables.push_back(std::string(var));
      }
      const Table& table = schema.tables[atom.table];
      if (atom.variables.size() != table.columns.size()) {
        resolve_fail(line_no, "atom for '" + table.name + "' has " +
                                  std::to_string(atom.variables.size()) + " variables, table has " +
                                  std::to_string(table.columns.size()) + " columns");
      }
      for (std::uint32_t i = 0; i < atom.variables.size(); ++i) {
        bindings.emplace(atom.variables[i], ColumnRef{atom.table, i});
      }
      assertion.atoms.push_back(std::move(atom));
    } else if (eq != std::string_view::npos) {
      SourceFilter filter;
      std::string_view var = trim(item.substr(0, eq));
      std::string_view value = trim(item.substr(eq + 1));
      if (!is_identifier(var)) parse_fail(line_no, "bad filter variable '" + std::string(var) + "'");
      if (value.size() < 2 || value.front() != '\'' || value.back() != '\'')
        parse_fail(line_no, "filter constant must be quoted: '" + std::string(item) + "'");
      filter.variable = std::string(var);
      filter.constant = std::string(value.substr(1, value.size() - 2));
      assertion.filters.push_back(std::move(filter));
    } else {
      parse_fail(line_no, "expected an atom or a filter, got '" + std::string(item) + "'");
    }
  }
  if (assertion.atoms.empty()) parse_fail(line_no, "mapping has no source atoms");

  for (Template& term : assertion.target_terms) {
    for (TermArg& arg : term.args) {
      if (!arg.is_constant) arg.column = resolve_variable(bindings, arg.variable, line_no);
    }
  }
  for (SourceFilter& filter : assertion.filters) {
    filter.column = resolve_variable(bindings, filter.variable, line_no);
  }
  return assertion;
}

}  // namespace

std::vector<MappingAssertion> parse_mappings(std::string_view text, const Schema& schema) {
  std::vector<MappingAssertion> assertions;
  std::size_t line_no = 0;
  for (std::string_view raw_line : detail::split(text, '\n')) {
    ++line_no;
    std::string_view line = trim(raw_line);
    if (line.empty() || line.front() == '#') continue;
    assertions.push_back(parse_line(line, schema, line_no));
  }
  return assertions;
}

std::string serialize_mappings(const std::vector<MappingAssertion>& assertions,
                               const Schema& schema) {
  std::string out;
  auto append_arg = [&](const TermArg& arg) {
    if (arg.is_constant) {
      out += "'" + arg.constant + "'";
    } else {
      out += arg.variable;
    }
  };
  for (const MappingAssertion& assertion : assertions) {
    out += assertion.predicate + "(";
    for (std::size_t i = 0; i < assertion.target_terms.size(); ++i) {
      const Template& term = assertion.target_terms[i];
      if (i > 0) out += ", ";
      if (term.symbol.empty()) {
        append_arg(term.args[0]);
      } else {
        out += term.symbol + "(";
        for (std::size_t a = 0; a < term.args.size(); ++a) {
          if (a > 0) out += ",";
          append_arg(term.args[a]);
        }
        out += ")";
      }
    }
    out += ") <- ";
    for (std::size_t i = 0; i < assertion.atoms.size(); ++i) {
      const SourceAtom& atom = assertion.atoms[i];
      if (i > 0) out += ", ";
      out += schema.tables[atom.table].name + "(";
      for (std::size_t v = 0; v < atom.variables.size(); ++v) {
        if (v > 0) out += ",";
        out += atom.variables[v];
      }
      out += ")";
    }
    for (const SourceFilter& filter : assertion.filters) {
      out += ", " + filter.variable + "='" + filter.constant + "'";
    }
    out += "\n";
  }
  return out;
}

std::vector<MappingAssertion> basic_mappings(const std::vector<MappingAssertion>& assertions) {
  std::vector<MappingAssertion> out;
  for (const MappingAssertion& assertion : assertions) {
    if (assertion.is_basic()) out.push_back(assertion);
  }
  return out;
}

std::vector<PreCluster> extract_preclusters(const std::vector<MappingAssertion>& assertions,
                                            const Schema& schema) {
  std::map<std::pair<std::string, std::uint32_t>, std::vector<ColumnRef>> grouped;
  for (const MappingAssertion& assertion : assertions) {
    if (!assertion.is_basic()) continue;
    for (const Template& term : assertion.target_terms) {
      if (term.symbol.empty()) continue;
      for (std::uint32_t p = 0; p < term.args.size(); ++p) {
        const TermArg& arg = term.args[p];
        if (arg.is_constant) continue;  // constants cannot join
        grouped[{term.symbol, p + 1}].push_back(arg.column);
      }
    }
  }
  std::vector<PreCluster> out;
  for (auto& [key, columns] : grouped) {
    PreCluster pc;
    pc.symbol = key.first;
    pc.position = key.second;
    std::sort(columns.begin(), columns.end());
    columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
    pc.columns = std::move(columns);
    Datatype type = schema.column(pc.columns.front()).type;
    for (ColumnRef ref : pc.columns) {
      if (schema.column(ref).type != type) {
        throw ValidationError("pre-cluster (" + pc.symbol + "," + std::to_string(pc.position) +
                              ") mixes datatypes: column '" + schema.column_display(ref) +
                              "' is not " + std::string(datatype_name(type)));
      }
    }
    out.push_back(std::move(pc));
  }
  return out;
}

std::set<ColumnRef> detect_fixed_domain(const std::vector<MappingAssertion>& assertions,
                                        const Schema& schema) {
  std::set<ColumnRef> fixed;
  for (const MappingAssertion& assertion : assertions) {
    for (const SourceFilter& filter : assertion.filters) fixed.insert(filter.column);
  }
  for (ColumnRef ref : schema.all_columns()) {
    if (schema.column(ref).fixed_domain_declared) fixed.insert(ref);
  }
  return fixed;
}

}  // namespace vig
