#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "vig/mapping.hpp"
#include "vig/rational.hpp"
#include "vig/schema.hpp"
#include "vig/stats.hpp"

namespace vig {

// Scaled size targets: every later phase consumes these, never raw stats.
struct ScaleTargets {
  struct ColumnTarget {
    std::uint64_t distinct_out = 0;
    std::uint64_t null_count_out = 0;
    bool fixed_domain = false;
  };
  struct TableTarget {
    std::uint64_t rows_out = 0;
    std::vector<ColumnTarget> columns;
  };
  std::vector<TableTarget> tables;

  ColumnTarget& column(ColumnRef ref) { return tables[ref.table].columns[ref.column]; }
  const ColumnTarget& column(ColumnRef ref) const {
    return tables[ref.table].columns[ref.column];
  }
  // Distinct count generation can actually realize: the cycle never emits
  // more values than there are non-null rows.
  std::uint64_t expected_distinct(ColumnRef ref) const {
    const TableTarget& t = tables[ref.table];
    const ColumnTarget& c = t.columns[ref.column];
    return std::min(c.distinct_out, t.rows_out - c.null_count_out);
  }
};

enum class IntervalTag { Simple, VennRegion, FkAligned };

struct Interval {
  std::int64_t lo = 0;
  std::int64_t hi = 0;  // inclusive
  IntervalTag tag = IntervalTag::Simple;
  std::uint32_t cluster = 0;      // VennRegion / cluster-solved FkAligned
  std::uint32_t region_mask = 0;  // VennRegion: member subset bitmask

  std::uint64_t width() const { return static_cast<std::uint64_t>(hi - lo) + 1; }
};

// Columns cluster: pre-clusters merged through the FK closure.  members are
// the columns whose value spaces share one Venn layout; closure adds every
// column FK-connected to a member and is a superset of members.
struct ColumnsCluster {
  std::vector<ColumnRef> members;  // sorted
  std::vector<ColumnRef> closure;  // sorted

  bool is_member(ColumnRef ref) const {
    return std::binary_search(members.begin(), members.end(), ref);
  }
};

// Columns that must share one value encoding because they are joinable:
// connected components of FK edges plus same-cluster pairs.
struct JoinComponent {
  std::vector<ColumnRef> columns;  // sorted; front() is the canonical column
};

struct IntervalPlan {
  ScaleTargets targets;
  std::vector<std::vector<std::vector<Interval>>> intervals;  // [table][column]
  std::vector<ColumnsCluster> clusters;
  std::vector<JoinComponent> components;

  const std::vector<Interval>& column_intervals(ColumnRef ref) const {
    return intervals[ref.table][ref.column];
  }
  std::uint64_t planned_width(ColumnRef ref) const {
    std::uint64_t w = 0;
    for (const Interval& iv : column_intervals(ref)) w += iv.width();
    return w;
  }
  const JoinComponent* component_of(ColumnRef ref) const;
};

// Scaled row counts, distinct counts (minimum 1 for non-empty seed columns,
// capped by the non-null row budget), and NULL counts.
ScaleTargets initialize_targets(const Schema& schema, const InstanceStats& stats,
                                const std::set<ColumnRef>& fixed_columns, Rational s);

// Ensures lcm(distinct_out of PK columns) > rows_out for every table:
// single-column PKs get distinct_out = rows_out exactly; multi-column PKs
// repeatedly increment the smallest non-fixed member.
void repair_primary_keys(const Schema& schema, ScaleTargets& targets);

// Partition of pre-clusters under the merge relation C(pc1) ∩ C(pc2) ≠ ∅,
// ordered by smallest member column.
std::vector<ColumnsCluster> merge_clusters(const std::vector<PreCluster>& preclusters,
                                           const Schema& schema);

std::vector<JoinComponent> join_components(const Schema& schema,
                                           const std::vector<ColumnsCluster>& clusters);

// Lays out one cluster's Venn regions consecutively from `base` (region
// order: subset size descending, then mask ascending) and reconciles each
// member's total width to its distinct_out.  Returns per-member interval
// lists; *space_end receives the first address past the used space.
std::map<ColumnRef, std::vector<Interval>> allocate_cluster_intervals(
    const Schema& schema, const ColumnsCluster& cluster, std::uint32_t cluster_id,
    const VennCounts& venn, Rational s, const ScaleTargets& targets, std::int64_t base,
    std::int64_t* space_end);

// Full planning pipeline: targets are taken as already repaired; venns[i]
// profiles clusters[i].  Produces the complete per-column interval plan
// with foreign keys aligned (delegating cross-cluster columns to the CSP).
IntervalPlan plan_intervals(const Schema& schema, const InstanceStats& stats,
                            const ScaleTargets& targets,
                            const std::vector<ColumnsCluster>& clusters,
                            const std::vector<VennCounts>& venns, Rational s);

// Human-readable plan report: one `table.column [lo,hi] tag width` line per
// interval, in schema order.
std::string dump_plan(const Schema& schema, const IntervalPlan& plan);

}  // namespace vig
