#include "vig/intervals.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "vig/csp.hpp"
#include "vig/error.hpp"
#include "vig/log.hpp"

namespace vig {
namespace {

// Flat column indexing for union-find over ColumnRefs.
struct ColumnIndex {
  std::vector<std::size_t> table_offset;
  std::size_t total = 0;

  explicit ColumnIndex(const Schema& schema) {
    table_offset.reserve(schema.tables.size());
    for (const Table& t : schema.tables) {
      table_offset.push_back(total);
      total += t.columns.size();
    }
  }
  std::size_t of(ColumnRef ref) const { return table_offset[ref.table] + ref.column; }
};

struct UnionFind {
  std::vector<std::size_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::string cluster_display(const Schema& schema, const ColumnsCluster& cluster) {
  std::string out = "{";
  for (std::size_t i = 0; i < cluster.members.size(); ++i) {
    if (i > 0) out += ",";
    out += schema.column_display(cluster.members[i]);
  }
  return out + "}";
}

std::int64_t pow10_i64(unsigned e) {
  std::int64_t v = 1;
  while (e-- > 0) v *= 10;
  return v;
}

std::int64_t checked_interval_hi(std::int64_t lo, std::uint64_t width, const std::string& what) {
  __int128 hi = static_cast<__int128>(lo) + static_cast<__int128>(width) - 1;
  if (hi > INT64_MAX) throw ValidationError("interval overflow planning " + what);
  return static_cast<std::int64_t>(hi);
}

}  // namespace

const JoinComponent* IntervalPlan::component_of(ColumnRef ref) const {
  for (const JoinComponent& comp : components) {
    if (std::binary_search(comp.columns.begin(), comp.columns.end(), ref)) return &comp;
  }
  return nullptr;
}

ScaleTargets initialize_targets(const Schema& schema, const InstanceStats& stats,
                                const std::set<ColumnRef>& fixed_columns, Rational s) {
  if (s.is_zero()) throw ValidationError("scale factor must be positive");
  ScaleTargets targets;
  targets.tables.resize(schema.tables.size());
  for (std::uint32_t t = 0; t < schema.tables.size(); ++t) {
    const TableStats& ts = stats.tables[t];
    ScaleTargets::TableTarget& tt = targets.tables[t];
    tt.rows_out = scale_round_half_up(ts.rows, s);
    tt.columns.resize(schema.tables[t].columns.size());
    for (std::uint32_t c = 0; c < tt.columns.size(); ++c) {
      const ColumnStats& cs = ts.columns[c];
      ScaleTargets::ColumnTarget& ct = tt.columns[c];
      ct.fixed_domain = fixed_columns.count(ColumnRef{t, c}) > 0;
      if (ct.fixed_domain) {
        ct.distinct_out = cs.distinct;
      } else {
        ct.distinct_out = scale_round_half_up(cs.distinct, s);
        if (cs.distinct >= 1 && ct.distinct_out == 0) ct.distinct_out = 1;
      }
      // NULL ratio is preserved exactly against the scaled row count.
      ct.null_count_out =
          ts.rows == 0 ? 0 : scale_round_half_up(tt.rows_out, Rational::of(cs.null_count, ts.rows));
      // The value cycle only advances on non-null rows, so a column can
      // never realize more distinct values than its non-null budget.
      std::uint64_t budget = tt.rows_out - ct.null_count_out;
      if (ct.distinct_out > budget) {
        if (ct.fixed_domain) {
          throw ValidationError("fixed-domain column '" +
                                schema.column_display(ColumnRef{t, c}) +
                                "' cannot retain its " + std::to_string(ct.distinct_out) +
                                " values within " + std::to_string(budget) + " non-null rows");
        }
        VIG_WARN() << "capping distinct target of " << schema.column_display(ColumnRef{t, c})
                   << " from " << ct.distinct_out << " to the non-null budget " << budget;
        ct.distinct_out = budget;
      }
    }
  }
  return targets;
}

void repair_primary_keys(const Schema& schema, ScaleTargets& targets) {
  for (std::uint32_t t = 0; t < schema.tables.size(); ++t) {
    const Table& table = schema.tables[t];
    if (table.primary_key.empty()) continue;
    std::uint64_t rows = targets.tables[t].rows_out;
    if (rows == 0) continue;

    if (table.primary_key.size() == 1) {
      // A single-column key is simply unique: one distinct value per row.
      ScaleTargets::ColumnTarget& ct = targets.tables[t].columns[table.primary_key[0]];
      if (ct.fixed_domain && ct.distinct_out != rows) {
        throw ValidationError("fixed-domain primary key '" +
                              schema.column_display({t, table.primary_key[0]}) +
                              "' cannot scale to " + std::to_string(rows) + " rows");
      }
      ct.distinct_out = rows;
      continue;
    }

    std::uint64_t iterations = 0;
    while (true) {
      unsigned __int128 l = 1;
      bool exceeded = false;
      for (std::uint32_t idx : table.primary_key) {
        std::uint64_t d = targets.tables[t].columns[idx].distinct_out;
        l = l / std::gcd(static_cast<std::uint64_t>(l), d) * d;
        if (l > rows) {
          exceeded = true;
          break;
        }
      }
      if (exceeded) break;
      // Minimal perturbation: grow the smallest adjustable member.
      std::uint32_t pick = UINT32_MAX;
      for (std::uint32_t idx : table.primary_key) {
        const ScaleTargets::ColumnTarget& ct = targets.tables[t].columns[idx];
        if (ct.fixed_domain) continue;
        if (pick == UINT32_MAX ||
            ct.distinct_out < targets.tables[t].columns[pick].distinct_out) {
          pick = idx;
        }
      }
      if (pick == UINT32_MAX) {
        throw ValidationError("primary key of '" + table.name +
                              "' cannot be repaired: every member column is fixed-domain");
      }
      ++targets.tables[t].columns[pick].distinct_out;
      if (++iterations > 1'000'000) {
        throw ValidationError("primary key repair for '" + table.name + "' did not converge");
      }
    }
  }
}

std::vector<ColumnsCluster> merge_clusters(const std::vector<PreCluster>& preclusters,
                                           const Schema& schema) {
  std::vector<std::set<ColumnRef>> closures(preclusters.size());
  for (std::size_t i = 0; i < preclusters.size(); ++i) {
    for (ColumnRef ref : preclusters[i].columns) {
      for (ColumnRef c : schema.closure_star(ref)) closures[i].insert(c);
    }
  }

  UnionFind uf(preclusters.size());
  for (std::size_t i = 0; i < preclusters.size(); ++i) {
    for (std::size_t j = i + 1; j < preclusters.size(); ++j) {
      bool intersects = false;
      for (ColumnRef ref : closures[j]) {
        if (closures[i].count(ref) > 0) {
          intersects = true;
          break;
        }
      }
      if (intersects) uf.unite(i, j);
    }
  }

  std::map<std::size_t, std::pair<std::set<ColumnRef>, std::set<ColumnRef>>> groups;
  for (std::size_t i = 0; i < preclusters.size(); ++i) {
    auto& [members, closure] = groups[uf.find(i)];
    members.insert(preclusters[i].columns.begin(), preclusters[i].columns.end());
    closure.insert(closures[i].begin(), closures[i].end());
  }

  std::vector<ColumnsCluster> clusters;
  for (auto& [root, group] : groups) {
    ColumnsCluster cluster;
    cluster.members.assign(group.first.begin(), group.first.end());
    cluster.closure.assign(group.second.begin(), group.second.end());
    clusters.push_back(std::move(cluster));
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const ColumnsCluster& a, const ColumnsCluster& b) {
              return a.members.front() < b.members.front();
            });

  for (const ColumnsCluster& cluster : clusters) {
    Datatype type = schema.column(cluster.members.front()).type;
    for (ColumnRef ref : cluster.members) {
      if (schema.column(ref).type != type) {
        throw Error(ErrorKind::Internal, "cluster " + cluster_display(schema, cluster) +
                                             " mixes datatypes after merging");
      }
    }
  }
  return clusters;
}

std::vector<JoinComponent> join_components(const Schema& schema,
                                           const std::vector<ColumnsCluster>& clusters) {
  ColumnIndex index(schema);
  UnionFind uf(index.total);
  for (const ForeignKey& fk : schema.foreign_keys) uf.unite(index.of(fk.child), index.of(fk.parent));
  for (const ColumnsCluster& cluster : clusters) {
    for (std::size_t i = 1; i < cluster.members.size(); ++i) {
      uf.unite(index.of(cluster.members[0]), index.of(cluster.members[i]));
    }
  }
  std::map<std::size_t, JoinComponent> by_root;
  for (ColumnRef ref : schema.all_columns()) by_root[uf.find(index.of(ref))].columns.push_back(ref);
  std::vector<JoinComponent> components;
  for (auto& [root, comp] : by_root) {
    std::sort(comp.columns.begin(), comp.columns.end());
    components.push_back(std::move(comp));
  }
  std::sort(components.begin(), components.end(),
            [](const JoinComponent& a, const JoinComponent& b) {
              return a.columns.front() < b.columns.front();
            });
  return components;
}

std::map<ColumnRef, std::vector<Interval>> allocate_cluster_intervals(
    const Schema& schema, const ColumnsCluster& cluster, std::uint32_t cluster_id,
    const VennCounts& venn, Rational s, const ScaleTargets& targets, std::int64_t base,
    std::int64_t* space_end) {
  const std::vector<ColumnRef>& members = cluster.members;
  std::size_t k = members.size();
  if (venn.cluster != members) {
    throw Error(ErrorKind::Internal, "venn profile does not match cluster members");
  }
  for (ColumnRef ref : members) {
    if (targets.column(ref).fixed_domain) {
      throw ValidationError("fixed-domain column '" + schema.column_display(ref) +
                            "' cannot belong to a columns cluster");
    }
  }

  // Scaled region widths; singleton regions always exist so reconciliation
  // has a place to pad.
  std::map<std::uint32_t, std::int64_t> width;
  for (const auto& [mask, count] : venn.region_counts) {
    width[mask] = static_cast<std::int64_t>(scale_round_half_up(count, s));
  }
  for (std::size_t i = 0; i < k; ++i) width.try_emplace(1u << i, 0);

  // In-cluster FK ancestor masks: a child's values must stay inside regions
  // that also contain every ancestor.
  std::vector<std::uint32_t> anc(k, 0);
  auto member_bit = [&](ColumnRef ref) -> int {
    auto it = std::lower_bound(members.begin(), members.end(), ref);
    if (it == members.end() || *it != ref) return -1;
    return static_cast<int>(it - members.begin());
  };
  std::vector<std::pair<int, int>> edges;  // (child bit, parent bit)
  for (const ForeignKey& fk : schema.foreign_keys) {
    int c = member_bit(fk.child), p = member_bit(fk.parent);
    if (c >= 0 && p >= 0) {
      edges.emplace_back(c, p);
      anc[c] |= 1u << p;
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (auto [c, p] : edges) {
      std::uint32_t next = anc[c] | anc[p];
      if (next != anc[c]) {
        anc[c] = next;
        changed = true;
      }
    }
  }

  for (const auto& [mask, w] : width) {
    if (w <= 0) continue;
    for (std::size_t i = 0; i < k; ++i) {
      if ((mask >> i) & 1u && (mask & anc[i]) != anc[i]) {
        throw ValidationError("seed data violates a foreign key inside cluster " +
                              cluster_display(schema, cluster) + ": values of '" +
                              schema.column_display(members[i]) +
                              "' occur outside the parent column");
      }
    }
  }

  // Reconcile children before parents so padding a child's region (which
  // must include its ancestors) is seen by the parents' own pass.
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::popcount(anc[a]) > std::popcount(anc[b]);
  });

  for (std::size_t i : order) {
    std::int64_t total = 0;
    for (const auto& [mask, w] : width) {
      if ((mask >> i) & 1u) total += w;
    }
    std::int64_t target = static_cast<std::int64_t>(targets.column(members[i]).distinct_out);
    std::int64_t diff = target - total;
    if (diff == 0) continue;
    std::uint32_t pad = (1u << i) | anc[i];
    width[pad] += diff;
    if (width[pad] < 0) {
      // Rounding over-shot by more than the private region holds; trim the
      // widest remaining regions of this column, largest first.
      std::int64_t deficit = -width[pad];
      width[pad] = 0;
      std::vector<std::uint32_t> candidates;
      for (const auto& [mask, w] : width) {
        if (mask != pad && ((mask >> i) & 1u) && w > 0) candidates.push_back(mask);
      }
      std::stable_sort(candidates.begin(), candidates.end(),
                       [&](std::uint32_t a, std::uint32_t b) { return width[a] > width[b]; });
      for (std::uint32_t mask : candidates) {
        std::int64_t take = std::min(deficit, width[mask]);
        width[mask] -= take;
        deficit -= take;
        if (deficit == 0) break;
      }
      if (deficit > 0) {
        throw ValidationError("cannot reconcile interval widths for '" +
                              schema.column_display(members[i]) + "' in cluster " +
                              cluster_display(schema, cluster));
      }
      VIG_WARN() << "trimmed shared regions of " << schema.column_display(members[i])
                 << " during width reconciliation";
    }
  }

  for (std::size_t i = 0; i < k; ++i) {
    std::int64_t total = 0;
    for (const auto& [mask, w] : width) {
      if ((mask >> i) & 1u) total += w;
    }
    if (total != static_cast<std::int64_t>(targets.column(members[i]).distinct_out)) {
      throw ValidationError("cluster " + cluster_display(schema, cluster) +
                            " width reconciliation failed for '" +
                            schema.column_display(members[i]) + "'");
    }
  }

  // Consecutive layout: larger subsets first, then ascending mask, which is
  // lexicographic order over the sorted member tuples.
  std::vector<std::uint32_t> layout;
  for (const auto& [mask, w] : width) {
    if (w > 0) layout.push_back(mask);
  }
  std::sort(layout.begin(), layout.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa > pb : a < b;
  });

  std::map<ColumnRef, std::vector<Interval>> out;
  for (ColumnRef ref : members) out[ref];  // empty lists for zero-width members
  std::int64_t cursor = base;
  for (std::uint32_t mask : layout) {
    Interval iv;
    iv.lo = cursor;
    iv.hi = checked_interval_hi(cursor, static_cast<std::uint64_t>(width[mask]),
                                cluster_display(schema, cluster));
    iv.tag = IntervalTag::VennRegion;
    iv.cluster = cluster_id;
    iv.region_mask = mask;
    cursor = iv.hi + 1;
    for (std::size_t i = 0; i < k; ++i) {
      if ((mask >> i) & 1u) out[members[i]].push_back(iv);
    }
  }
  *space_end = cursor;
  return out;
}

namespace {

// Solves the boundary CSP for the columns of C(cc) \ cc and writes their
// intervals into the plan.
void align_cluster_outsiders(const Schema& schema, const ColumnsCluster& cluster,
                             std::uint32_t cluster_id, const std::vector<Interval>& layout,
                             std::int64_t space_end, IntervalPlan& plan) {
  std::vector<ColumnRef> outside;
  for (ColumnRef ref : cluster.closure) {
    if (!cluster.is_member(ref)) outside.push_back(ref);
  }
  if (outside.empty()) return;
  for (ColumnRef ref : outside) {
    if (plan.targets.column(ref).fixed_domain) {
      throw ValidationError("fixed-domain column '" + schema.column_display(ref) +
                            "' cannot take part in foreign-key alignment with cluster " +
                            cluster_display(schema, cluster));
    }
  }

  std::uint64_t extra_width = 0;
  for (ColumnRef ref : outside) extra_width += plan.targets.column(ref).distinct_out;

  std::vector<Interval> space = layout;
  if (extra_width > 0) {
    Interval extra;
    extra.lo = space_end;
    extra.hi = checked_interval_hi(space_end, extra_width, "extra interval");
    extra.tag = IntervalTag::FkAligned;
    extra.cluster = cluster_id;
    space.push_back(extra);
  }

  std::vector<ColumnRef> cols = cluster.members;
  cols.insert(cols.end(), outside.begin(), outside.end());

  CspProblem problem;
  // var ids: per column, per interval, X then Y.
  auto var_x = [&](std::size_t col, std::size_t iv) {
    return static_cast<std::uint32_t>((col * space.size() + iv) * 2);
  };
  auto var_y = [&](std::size_t col, std::size_t iv) { return var_x(col, iv) + 1; };

  for (std::size_t col = 0; col < cols.size(); ++col) {
    bool member = col < cluster.members.size();
    for (std::size_t iv = 0; iv < space.size(); ++iv) {
      const Interval& range = space[iv];
      std::string tag =
          "<" + schema.column_display(cols[col]) + "," + std::to_string(iv) + ">";
      if (member) {
        bool occupied = range.tag == IntervalTag::VennRegion &&
                        ((range.region_mask >> col) & 1u);
        std::int64_t x = range.lo;
        std::int64_t y = occupied ? range.hi + 1 : range.lo;
        problem.add_var(x, x, "X" + tag);
        problem.add_var(y, y, "Y" + tag);
      } else {
        problem.add_var(range.lo, range.hi + 1, "X" + tag);
        problem.add_var(range.lo, range.hi + 1, "Y" + tag);
      }
      problem.les.push_back({var_x(col, iv), var_y(col, iv)});
    }
  }

  // Foreign keys: child boundaries nested inside parent boundaries, per
  // interval, in both directions.
  for (const ForeignKey& fk : schema.foreign_keys) {
    auto child_it = std::find(cols.begin(), cols.end(), fk.child);
    auto parent_it = std::find(cols.begin(), cols.end(), fk.parent);
    if (child_it == cols.end() || parent_it == cols.end()) continue;
    std::size_t child = child_it - cols.begin(), parent = parent_it - cols.begin();
    for (std::size_t iv = 0; iv < space.size(); ++iv) {
      problem.les.push_back({var_x(parent, iv), var_x(child, iv)});
      problem.les.push_back({var_y(child, iv), var_y(parent, iv)});
    }
  }

  for (std::size_t col = cluster.members.size(); col < cols.size(); ++col) {
    CspProblem::Sum sum;
    for (std::size_t iv = 0; iv < space.size(); ++iv) {
      sum.ys.push_back(var_y(col, iv));
      sum.xs.push_back(var_x(col, iv));
    }
    sum.total = static_cast<std::int64_t>(plan.targets.column(cols[col]).distinct_out);
    problem.sums.push_back(std::move(sum));
  }

  std::optional<CspSolution> solution;
  try {
    solution = csp_solve(problem);
  } catch (const ResourceError&) {
    throw ResourceError("constraint search budget exhausted aligning cluster " +
                        cluster_display(schema, cluster));
  }
  if (!solution) {
    throw UnsatError("foreign-key alignment is unsatisfiable for cluster " +
                     cluster_display(schema, cluster));
  }
  if (!csp_verify(problem, *solution)) {
    throw Error(ErrorKind::Internal, "constraint solution failed verification for cluster " +
                                         cluster_display(schema, cluster));
  }

  for (std::size_t col = cluster.members.size(); col < cols.size(); ++col) {
    ColumnRef ref = cols[col];
    std::vector<Interval>& out = plan.intervals[ref.table][ref.column];
    for (std::size_t iv = 0; iv < space.size(); ++iv) {
      std::int64_t x = solution->values[var_x(col, iv)];
      std::int64_t y = solution->values[var_y(col, iv)];
      if (y - x <= 0) continue;
      Interval piece;
      piece.lo = x;
      piece.hi = y - 1;
      piece.tag = IntervalTag::FkAligned;
      piece.cluster = cluster_id;
      out.push_back(piece);
    }
  }
}

}  // namespace

IntervalPlan plan_intervals(const Schema& schema, const InstanceStats& stats,
                            const ScaleTargets& targets,
                            const std::vector<ColumnsCluster>& clusters,
                            const std::vector<VennCounts>& venns, Rational s) {
  IntervalPlan plan;
  plan.targets = targets;
  plan.clusters = clusters;
  plan.components = join_components(schema, clusters);
  plan.intervals.resize(schema.tables.size());
  for (std::uint32_t t = 0; t < schema.tables.size(); ++t) {
    plan.intervals[t].resize(schema.tables[t].columns.size());
  }

  std::map<ColumnRef, std::uint32_t> in_closure;
  for (std::uint32_t ci = 0; ci < clusters.size(); ++ci) {
    for (ColumnRef ref : clusters[ci].closure) in_closure[ref] = ci;
  }

  auto component_decimal_scale = [&](ColumnRef ref) {
    unsigned scale = 0;
    for (ColumnRef c : plan.component_of(ref)->columns) {
      if (schema.column(c).type == Datatype::Decimal) {
        scale = std::max(scale, stats.column(c).decimal_scale);
      }
    }
    return scale;
  };

  // Simple anchored intervals for every column outside cluster closures.
  // Foreign-key children get overwritten by alignment below.
  for (ColumnRef ref : schema.all_columns()) {
    if (in_closure.count(ref) > 0) continue;
    const ScaleTargets::ColumnTarget& ct = plan.targets.column(ref);
    std::uint64_t d = ct.distinct_out;
    if (d == 0) continue;
    Interval iv;
    iv.tag = IntervalTag::Simple;
    if (ct.fixed_domain) {
      iv.lo = 1;
    } else {
      switch (schema.column(ref).type) {
        case Datatype::Integer:
        case Datatype::Date:
          iv.lo = stats.column(ref).min_numeric;
          break;
        case Datatype::Decimal: {
          unsigned scale = component_decimal_scale(ref);
          iv.lo = stats.column(ref).min_numeric *
                  pow10_i64(scale - stats.column(ref).decimal_scale);
          break;
        }
        case Datatype::Text:
          iv.lo = 1;
          break;
        case Datatype::Boolean:
          throw ValidationError("BOOLEAN column '" + schema.column_display(ref) +
                                "' must be fixed-domain");
      }
    }
    iv.hi = checked_interval_hi(iv.lo, d, schema.column_display(ref));
    plan.intervals[ref.table][ref.column].push_back(iv);
  }

  // Cluster layouts, then the boundary CSP for closure outsiders.
  for (std::uint32_t ci = 0; ci < clusters.size(); ++ci) {
    std::int64_t space_end = 0;
    auto allocation = allocate_cluster_intervals(schema, clusters[ci], ci, venns[ci], s,
                                                 plan.targets, /*base=*/1, &space_end);
    std::vector<Interval> layout;
    for (auto& [ref, intervals] : allocation) {
      for (const Interval& iv : intervals) {
        if (layout.empty() || layout.back().region_mask != iv.region_mask ||
            layout.back().lo != iv.lo) {
          layout.push_back(iv);
        }
      }
      plan.intervals[ref.table][ref.column] = std::move(intervals);
    }
    std::sort(layout.begin(), layout.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    layout.erase(std::unique(layout.begin(), layout.end(),
                             [](const Interval& a, const Interval& b) { return a.lo == b.lo; }),
                 layout.end());
    align_cluster_outsiders(schema, clusters[ci], ci, layout, space_end, plan);
  }

  // Plain foreign keys (no endpoint near any cluster): prefix alignment,
  // parents before children.
  std::vector<const ForeignKey*> plain;
  std::map<ColumnRef, std::size_t> child_count;
  for (const ForeignKey& fk : schema.foreign_keys) {
    bool child_in = in_closure.count(fk.child) > 0;
    bool parent_in = in_closure.count(fk.parent) > 0;
    if (child_in != parent_in) {
      throw Error(ErrorKind::Internal,
                  "foreign key straddles a cluster closure: " + schema.column_display(fk.child));
    }
    if (child_in) continue;  // handled by the cluster CSP
    plain.push_back(&fk);
    ++child_count[fk.child];
  }
  for (const auto& [ref, count] : child_count) {
    if (count > 1) {
      throw ValidationError("column '" + schema.column_display(ref) +
                            "' has multiple foreign-key parents; alignment is unsupported");
    }
  }

  std::set<ColumnRef> pending;
  for (const ForeignKey* fk : plain) pending.insert(fk->child);
  std::vector<const ForeignKey*> ordered;
  while (!plain.empty()) {
    std::size_t before = ordered.size();
    for (auto it = plain.begin(); it != plain.end();) {
      if (pending.count((*it)->parent) == 0) {
        ordered.push_back(*it);
        pending.erase((*it)->child);
        it = plain.erase(it);
      } else {
        ++it;
      }
    }
    if (ordered.size() == before) {
      throw ValidationError("foreign keys form a cycle through '" +
                            schema.column_display(plain.front()->child) + "'");
    }
  }

  for (const ForeignKey* fk : ordered) {
    const ScaleTargets::ColumnTarget& child_t = plan.targets.column(fk->child);
    const ScaleTargets::ColumnTarget& parent_t = plan.targets.column(fk->parent);
    if (child_t.fixed_domain != parent_t.fixed_domain) {
      throw ValidationError("foreign key " + schema.column_display(fk->child) + " -> " +
                            schema.column_display(fk->parent) +
                            " mixes fixed-domain and scaled columns");
    }
    if (child_t.distinct_out > parent_t.distinct_out) {
      throw ValidationError("foreign key " + schema.column_display(fk->child) + " -> " +
                            schema.column_display(fk->parent) + " needs " +
                            std::to_string(child_t.distinct_out) +
                            " distinct values but the parent only has " +
                            std::to_string(parent_t.distinct_out));
    }
    if (child_t.fixed_domain) {
      // Both ends fixed-domain: a fixed parent realizes its whole domain, so
      // containment of the child's domain is all referential integrity needs.
      const std::vector<std::string>& child_dom = stats.column(fk->child).domain_values;
      const std::vector<std::string>& parent_dom = stats.column(fk->parent).domain_values;
      std::set<std::string> parent_set(parent_dom.begin(), parent_dom.end());
      for (const std::string& v : child_dom) {
        if (parent_set.count(v) == 0) {
          throw ValidationError("fixed-domain foreign key " + schema.column_display(fk->child) +
                                " -> " + schema.column_display(fk->parent) +
                                ": child value '" + v + "' is missing from the parent domain");
        }
      }
    }
    const std::vector<Interval>& parent_iv = plan.column_intervals(fk->parent);
    if (parent_iv.size() != 1) {
      throw Error(ErrorKind::Internal, "plain foreign-key parent '" +
                                           schema.column_display(fk->parent) +
                                           "' does not have a single interval");
    }
    std::vector<Interval>& child_iv = plan.intervals[fk->child.table][fk->child.column];
    child_iv.clear();
    if (child_t.distinct_out > 0) {
      Interval iv;
      iv.lo = parent_iv[0].lo;
      iv.hi = checked_interval_hi(iv.lo, child_t.distinct_out,
                                  schema.column_display(fk->child));
      iv.tag = IntervalTag::FkAligned;
      child_iv.push_back(iv);
    }
  }

  // Every column's planned width must equal its distinct target.
  for (ColumnRef ref : schema.all_columns()) {
    if (plan.planned_width(ref) != plan.targets.column(ref).distinct_out) {
      throw Error(ErrorKind::Internal,
                  "planned width of '" + schema.column_display(ref) + "' is " +
                      std::to_string(plan.planned_width(ref)) + ", expected " +
                      std::to_string(plan.targets.column(ref).distinct_out));
    }
  }
  return plan;
}

std::string dump_plan(const Schema& schema, const IntervalPlan& plan) {
  std::string out;
  for (ColumnRef ref : schema.all_columns()) {
    for (const Interval& iv : plan.column_intervals(ref)) {
      out += schema.column_display(ref) + " [" + std::to_string(iv.lo) + "," +
             std::to_string(iv.hi) + "] ";
      switch (iv.tag) {
        case IntervalTag::Simple:
          out += "simple";
          break;
        case IntervalTag::VennRegion: {
          const ColumnsCluster& cluster = plan.clusters[iv.cluster];
          out += "venn-region{";
          bool first = true;
          for (std::size_t i = 0; i < cluster.members.size(); ++i) {
            if ((iv.region_mask >> i) & 1u) {
              if (!first) out += ",";
              out += schema.column_display(cluster.members[i]);
              first = false;
            }
          }
          out += "}";
          break;
        }
        case IntervalTag::FkAligned:
          out += "fk-aligned";
          break;
      }
      out += " " + std::to_string(iv.width()) + "\n";
    }
  }
  return out;
}

}  // namespace vig
