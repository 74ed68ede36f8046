#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vig/schema.hpp"

namespace vig {

// Argument of a target term: either a constant literal or a source variable
// resolved to a column through the mapping's source atoms.
struct TermArg {
  bool is_constant = false;
  std::string constant;   // when is_constant
  std::string variable;   // else: variable as written
  ColumnRef column;       // else: resolution via the first binding atom

  friend bool operator==(const TermArg&, const TermArg&) = default;
};

// A target term: template `f(args)` when symbol is non-empty, otherwise a
// bare variable or constant carried in args[0].
struct Template {
  std::string symbol;
  std::vector<TermArg> args;

  friend bool operator==(const Template&, const Template&) = default;
};

// One source atom `table(v1, ..., vk)`; variables bind positionally, so the
// arity must equal the table's column count.
struct SourceAtom {
  std::uint32_t table = 0;
  std::vector<std::string> variables;

  friend bool operator==(const SourceAtom&, const SourceAtom&) = default;
};

// Equality filter `var = 'constant'`.
struct SourceFilter {
  std::string variable;
  ColumnRef column;
  std::string constant;

  friend bool operator==(const SourceFilter&, const SourceFilter&) = default;
};

struct MappingAssertion {
  std::string predicate;
  std::vector<Template> target_terms;  // arity 1 (class) or 2 (property)
  std::vector<SourceAtom> atoms;
  std::vector<SourceFilter> filters;

  bool is_basic() const { return atoms.size() == 1; }

  friend bool operator==(const MappingAssertion&, const MappingAssertion&) = default;
};

// Columns feeding argument position `position` (1-based) of template symbol
// `symbol` across basic mappings; such columns join in rewritten queries.
struct PreCluster {
  std::string symbol;
  std::uint32_t position = 0;
  std::vector<ColumnRef> columns;  // sorted, deduplicated

  friend bool operator==(const PreCluster&, const PreCluster&) = default;
};

// Parses the mapping document (one mapping per line, `#` comments) and
// resolves every variable against the schema.
std::vector<MappingAssertion> parse_mappings(std::string_view text, const Schema& schema);

// Canonical re-serialization; parse(serialize(m)) == m.
std::string serialize_mappings(const std::vector<MappingAssertion>& assertions,
                               const Schema& schema);

std::vector<MappingAssertion> basic_mappings(const std::vector<MappingAssertion>& assertions);

// One pre-cluster per (symbol, position) pair occurring in basic-mapping
// targets; ordered by (symbol, position).
std::vector<PreCluster> extract_preclusters(const std::vector<MappingAssertion>& assertions,
                                            const Schema& schema);

// Columns compared to constants in filters, plus schema-level declarations.
std::set<ColumnRef> detect_fixed_domain(const std::vector<MappingAssertion>& assertions,
                                        const Schema& schema);

}  // namespace vig
