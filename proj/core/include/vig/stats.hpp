#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "vig/rational.hpp"
#include "vig/schema.hpp"

namespace vig {

struct ColumnStats {
  std::uint64_t distinct = 0;    // distinct non-null values
  std::uint64_t null_count = 0;  // exact: null_ratio = null_count / rows
  bool has_min = false;
  // INTEGER: value; DATE: days since epoch; DECIMAL: unscaled at decimal_scale.
  std::int64_t min_numeric = 0;
  unsigned decimal_scale = 0;  // max canonical fractional digits (DECIMAL only)
  // Canonical values in first-occurrence order; captured only for columns in
  // the fixed-domain set passed to scan_instance.
  std::vector<std::string> domain_values;

  Rational null_ratio(std::uint64_t rows) const {
    return rows == 0 ? Rational{0, 1} : Rational::of(null_count, rows);
  }
};

struct TableStats {
  std::uint64_t rows = 0;
  std::vector<ColumnStats> columns;  // by schema column order
};

struct InstanceStats {
  std::vector<TableStats> tables;  // by schema table order

  const ColumnStats& column(ColumnRef ref) const { return tables[ref.table].columns[ref.column]; }
};

// Venn-region partition of a column cluster's value space: for each
// non-empty subset H of the cluster (as a bitmask over the sorted member
// list), the count of values occurring in every column of H and in no other
// cluster column.  Zero-count regions are omitted.
struct VennCounts {
  std::vector<ColumnRef> cluster;                        // sorted; bit i = cluster[i]
  std::map<std::uint32_t, std::uint64_t> region_counts;  // mask -> count > 0

  std::uint64_t count(std::uint32_t mask) const {
    auto it = region_counts.find(mask);
    return it == region_counts.end() ? 0 : it->second;
  }
};

// Streams `<data_dir>/<table>.csv` for every table and computes exact
// statistics.  fixed_columns selects which columns retain domain_values.
// Scans run one thread per table up to `parallelism` workers.
InstanceStats scan_instance(const Schema& schema, const std::string& data_dir,
                            const std::set<ColumnRef>& fixed_columns, unsigned parallelism = 1);

// Exact region counts for one cluster, joining on canonical values of
// non-null fields.  Clusters larger than `cap` columns are rejected.
VennCounts venn_profile(const Schema& schema, const std::vector<ColumnRef>& cluster,
                        const std::string& data_dir, unsigned cap = 12);

}  // namespace vig
