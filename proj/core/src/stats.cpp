#include "vig/stats.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "vig/csv.hpp"
#include "vig/datatype.hpp"
#include "vig/detail/parallel.hpp"
#include "vig/error.hpp"
#include "vig/log.hpp"

namespace vig {
namespace {

std::string table_file(const std::string& data_dir, const std::string& table_name) {
  return data_dir + "/" + table_name + ".csv";
}

void check_header(const Schema& schema, std::uint32_t table_idx, CsvReader& reader,
                  const std::vector<std::string>& fields) {
  const Table& table = schema.tables[table_idx];
  bool ok = fields.size() == table.columns.size();
  for (std::size_t i = 0; ok && i < fields.size(); ++i) ok = fields[i] == table.columns[i].name;
  if (!ok) {
    throw ParseError(reader.path() + ": header does not match schema columns of '" + table.name +
                     "'");
  }
}

// Numeric interpretation of a canonical field for minimum tracking.
struct MinTracker {
  bool has_value = false;
  std::int64_t int_min = 0;              // INTEGER / DATE
  DecimalValue dec_min;                  // DECIMAL, canonical scale
  unsigned max_scale = 0;                // DECIMAL

  void update_int(std::int64_t v) {
    if (!has_value || v < int_min) int_min = v;
    has_value = true;
  }
  void update_decimal(DecimalValue v) {
    max_scale = std::max(max_scale, v.scale);
    if (!has_value) {
      dec_min = v;
      has_value = true;
      return;
    }
    // Compare a/10^s vs b/10^t via cross-multiplication.
    using i128 = __int128;
    i128 lhs = v.unscaled, rhs = dec_min.unscaled;
    for (unsigned i = 0; i < dec_min.scale; ++i) lhs *= 10;
    for (unsigned i = 0; i < v.scale; ++i) rhs *= 10;
    if (lhs < rhs) dec_min = v;
  }
  std::int64_t unscaled_min() const {
    std::int64_t v = dec_min.unscaled;
    for (unsigned i = dec_min.scale; i < max_scale; ++i) v *= 10;
    return v;
  }
};

TableStats scan_table(const Schema& schema, std::uint32_t table_idx, const std::string& data_dir,
                      const std::set<ColumnRef>& fixed_columns) {
  const Table& table = schema.tables[table_idx];
  CsvReader reader(table_file(data_dir, table.name));
  std::vector<std::string> fields;
  std::vector<bool> nulls;
  if (!reader.next(fields, nulls)) {
    throw ParseError(reader.path() + ": missing header row");
  }
  check_header(schema, table_idx, reader, fields);

  TableStats stats;
  stats.columns.resize(table.columns.size());
  std::vector<std::unordered_set<std::string>> seen(table.columns.size());
  std::vector<MinTracker> mins(table.columns.size());
  std::vector<bool> capture_domain(table.columns.size());
  for (std::uint32_t c = 0; c < table.columns.size(); ++c) {
    capture_domain[c] = fixed_columns.count(ColumnRef{table_idx, c}) > 0;
  }
  std::unordered_set<std::string> pk_tuples;

  while (reader.next(fields, nulls)) {
    if (fields.size() != table.columns.size()) {
      throw ParseError(reader.path() + " line " + std::to_string(reader.record_line()) +
                       ": expected " + std::to_string(table.columns.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    ++stats.rows;
    for (std::uint32_t c = 0; c < table.columns.size(); ++c) {
      const Column& column = table.columns[c];
      if (nulls[c]) {
        if (!column.nullable) {
          throw ValidationError(reader.path() + " line " + std::to_string(reader.record_line()) +
                                ": NULL in non-nullable column '" + table.name + "." +
                                column.name + "'");
        }
        ++stats.columns[c].null_count;
        continue;
      }
      auto canonical = canonical_value(column.type, fields[c]);
      if (!canonical) {
        throw ParseError(reader.path() + " line " + std::to_string(reader.record_line()) +
                         ": cannot read '" + fields[c] + "' as " +
                         std::string(datatype_name(column.type)) + " for column '" + table.name +
                         "." + column.name + "'");
      }
      switch (column.type) {
        case Datatype::Integer:
          mins[c].update_int(*parse_int64(*canonical));
          break;
        case Datatype::Date:
          mins[c].update_int(*parse_date(*canonical));
          break;
        case Datatype::Decimal:
          mins[c].update_decimal(*parse_decimal(*canonical));
          break;
        default:
          break;
      }
      bool fresh = seen[c].insert(*canonical).second;
      if (fresh && capture_domain[c]) stats.columns[c].domain_values.push_back(*canonical);
    }
    if (!table.primary_key.empty()) {
      std::string key;
      for (std::uint32_t idx : table.primary_key) {
        key += *canonical_value(table.columns[idx].type, fields[idx]);
        key.push_back('\x1f');
      }
      if (!pk_tuples.insert(std::move(key)).second) {
        throw ValidationError(reader.path() + " line " + std::to_string(reader.record_line()) +
                              ": duplicate primary key tuple in '" + table.name + "'");
      }
    }
  }

  for (std::uint32_t c = 0; c < table.columns.size(); ++c) {
    ColumnStats& cs = stats.columns[c];
    cs.distinct = seen[c].size();
    if (mins[c].has_value) {
      cs.has_min = true;
      if (table.columns[c].type == Datatype::Decimal) {
        cs.decimal_scale = mins[c].max_scale;
        cs.min_numeric = mins[c].unscaled_min();
      } else {
        cs.min_numeric = mins[c].int_min;
      }
    }
  }
  return stats;
}

}  // namespace

InstanceStats scan_instance(const Schema& schema, const std::string& data_dir,
                            const std::set<ColumnRef>& fixed_columns, unsigned parallelism) {
  InstanceStats stats;
  stats.tables.resize(schema.tables.size());
  detail::parallel_for(schema.tables.size(), parallelism, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      stats.tables[t] =
          scan_table(schema, static_cast<std::uint32_t>(t), data_dir, fixed_columns);
    }
  });
  for (std::uint32_t t = 0; t < schema.tables.size(); ++t) {
    VIG_DEBUG() << "scanned " << schema.tables[t].name << ": " << stats.tables[t].rows << " rows";
  }
  return stats;
}

VennCounts venn_profile(const Schema& schema, const std::vector<ColumnRef>& cluster,
                        const std::string& data_dir, unsigned cap) {
  VennCounts venn;
  venn.cluster = cluster;
  std::sort(venn.cluster.begin(), venn.cluster.end());
  if (venn.cluster.size() > cap) {
    throw ValidationError("cluster of " + std::to_string(venn.cluster.size()) +
                          " columns exceeds the Venn enumeration cap of " + std::to_string(cap) +
                          "; split the mappings or raise the cap");
  }

  // value -> bitmask of member columns containing it.
  std::unordered_map<std::string, std::uint32_t> membership;
  for (std::uint32_t bit = 0; bit < venn.cluster.size(); ++bit) {
    ColumnRef ref = venn.cluster[bit];
    const Table& table = schema.table(ref);
    CsvReader reader(table_file(data_dir, table.name));
    std::vector<std::string> fields;
    std::vector<bool> nulls;
    if (!reader.next(fields, nulls)) throw ParseError(reader.path() + ": missing header row");
    check_header(schema, ref.table, reader, fields);
    while (reader.next(fields, nulls)) {
      if (fields.size() != table.columns.size()) {
        throw ParseError(reader.path() + " line " + std::to_string(reader.record_line()) +
                         ": expected " + std::to_string(table.columns.size()) + " fields, got " +
                         std::to_string(fields.size()));
      }
      if (nulls[ref.column]) continue;
      auto canonical = canonical_value(schema.column(ref).type, fields[ref.column]);
      if (!canonical) {
        throw ParseError(reader.path() + " line " + std::to_string(reader.record_line()) +
                         ": cannot read '" + fields[ref.column] + "' as " +
                         std::string(datatype_name(schema.column(ref).type)));
      }
      membership[*canonical] |= 1u << bit;
    }
  }
  for (const auto& [value, mask] : membership) ++venn.region_counts[mask];
  return venn;
}

}  // namespace vig
