#include "vig/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "vig/csv.hpp"
#include "vig/datatype.hpp"
#include "vig/error.hpp"
#include "vig/log.hpp"

namespace vig {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace

std::set<ColumnRef> resolve_column_list(const Schema& schema,
                                        const std::vector<std::string>& names) {
  std::set<ColumnRef> out;
  for (const std::string& name : names) {
    std::size_t dot = name.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == name.size()) {
      throw ValidationError("'" + name + "' is not of the form table.column");
    }
    auto table = schema.find_table(name.substr(0, dot));
    if (!table) throw ValidationError("unknown table in '" + name + "'");
    auto column = schema.tables[*table].find_column(name.substr(dot + 1));
    if (!column) throw ValidationError("unknown column in '" + name + "'");
    out.insert(ColumnRef{*table, *column});
  }
  return out;
}

RunResult run_pipeline(const RunConfig& config) {
  RunResult result;
  VIG_INFO() << "loading schema from " << config.schema_path;
  result.schema = load_schema(read_file(config.schema_path));

  std::vector<MappingAssertion> mappings;
  if (!config.mappings_path.empty()) {
    VIG_INFO() << "loading mappings from " << config.mappings_path;
    std::string text;
    try {
      text = read_file(config.mappings_path);
    } catch (const IoError& e) {
      // An unreadable mappings file is a failure of the parse phase.
      throw ParseError(e.what());
    }
    mappings = parse_mappings(text, result.schema);
  }

  // Fixed-domain set: filter constants and schema declarations, CLI
  // overrides, and every BOOLEAN column (its two-value domain never scales).
  std::set<ColumnRef> fixed = detect_fixed_domain(mappings, result.schema);
  for (ColumnRef ref : resolve_column_list(result.schema, config.fixed)) fixed.insert(ref);
  for (ColumnRef ref : result.schema.all_columns()) {
    if (result.schema.column(ref).type == Datatype::Boolean) fixed.insert(ref);
  }

  VIG_INFO() << "scanning seed instance in " << config.data_dir;
  result.stats = scan_instance(result.schema, config.data_dir, fixed, config.parallelism);

  std::vector<PreCluster> preclusters = extract_preclusters(mappings, result.schema);
  result.clusters = merge_clusters(preclusters, result.schema);
  std::vector<VennCounts> venns;
  venns.reserve(result.clusters.size());
  for (const ColumnsCluster& cluster : result.clusters) {
    venns.push_back(
        venn_profile(result.schema, cluster.members, config.data_dir, config.venn_cap));
  }
  VIG_INFO() << result.clusters.size() << " cluster(s) from " << preclusters.size()
             << " pre-cluster(s)";

  ScaleTargets targets = initialize_targets(result.schema, result.stats, fixed, config.scale);
  repair_primary_keys(result.schema, targets);
  result.plan =
      plan_intervals(result.schema, result.stats, targets, result.clusters, venns, config.scale);
  result.plan_text = dump_plan(result.schema, result.plan);

  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + config.out_dir + "': " + ec.message());
  }
  write_file(config.out_dir + "/_plan.txt", result.plan_text);
  if (config.report_only) {
    VIG_INFO() << "report-only run: plan written, no data generated";
    return result;
  }

  result.summary = export_instance(result.schema, result.stats, result.plan, config.out_dir,
                                   config.seed, config.parallelism);
  std::string report;
  for (const ExportSummary::TableSummary& ts : result.summary.tables) {
    report += ts.name + " " + std::to_string(ts.rows) + " " + std::to_string(ts.bytes) + "\n";
  }
  write_file(config.out_dir + "/_report.txt", report);

  if (config.validate) {
    result.violations = validate_output(result.schema, result.plan, config.out_dir);
    for (const std::string& v : result.violations) VIG_ERROR() << "validation: " << v;
  }
  return result;
}

std::vector<std::string> validate_output(const Schema& schema, const IntervalPlan& plan,
                                         const std::string& out_dir) {
  std::vector<std::string> violations;
  auto complain = [&](std::string text) { violations.push_back(std::move(text)); };

  // Canonical non-null value sets per column; validation instances are the
  // planning-sized fixtures, so holding them in memory is fine.
  std::vector<std::vector<std::unordered_set<std::string>>> values(schema.tables.size());
  for (std::uint32_t t = 0; t < schema.tables.size(); ++t) {
    const Table& table = schema.tables[t];
    values[t].resize(table.columns.size());
    std::vector<std::uint64_t> nulls(table.columns.size(), 0);
    std::uint64_t rows = 0;
    std::unordered_set<std::string> pk_seen;
    std::uint64_t pk_dups = 0;

    CsvReader reader(out_dir + "/" + table.name + ".csv");
    std::vector<std::string> fields;
    std::vector<bool> field_nulls;
    if (!reader.next(fields, field_nulls)) {
      complain(table.name + ": missing header");
      continue;
    }
    bool header_ok = fields.size() == table.columns.size();
    for (std::size_t c = 0; header_ok && c < fields.size(); ++c) {
      header_ok = fields[c] == table.columns[c].name;
    }
    if (!header_ok) {
      complain(table.name + ": header does not match the schema");
      continue;
    }

    bool arity_ok = true;
    while (reader.next(fields, field_nulls)) {
      if (fields.size() != table.columns.size()) {
        complain(table.name + " line " + std::to_string(reader.record_line()) +
                 ": wrong field count");
        arity_ok = false;
        break;
      }
      ++rows;
      std::string pk_key;
      for (std::size_t c = 0; c < fields.size(); ++c) {
        if (field_nulls[c]) {
          ++nulls[c];
          continue;
        }
        auto canon = canonical_value(table.columns[c].type, fields[c]);
        if (!canon) {
          complain(schema.column_display({t, static_cast<std::uint32_t>(c)}) + " line " +
                   std::to_string(reader.record_line()) + ": unparseable value '" + fields[c] +
                   "'");
          continue;
        }
        values[t][c].insert(*canon);
      }
      bool pk_null = false;
      for (std::uint32_t c : table.primary_key) {
        if (field_nulls[c]) pk_null = true;
        pk_key += fields[c];
        pk_key += '\x1f';
      }
      if (!table.primary_key.empty()) {
        if (pk_null) {
          complain(table.name + " line " + std::to_string(reader.record_line()) +
                   ": NULL in primary key");
        } else if (!pk_seen.insert(pk_key).second) {
          ++pk_dups;
        }
      }
    }
    if (!arity_ok) continue;

    std::uint64_t rows_expected = plan.targets.tables[t].rows_out;
    if (rows != rows_expected) {
      complain(table.name + ": " + std::to_string(rows) + " rows, expected " +
               std::to_string(rows_expected));
    }
    if (pk_dups > 0) {
      complain(table.name + ": " + std::to_string(pk_dups) + " duplicate primary-key tuple(s)");
    }
    for (std::uint32_t c = 0; c < table.columns.size(); ++c) {
      ColumnRef ref{t, c};
      if (nulls[c] != plan.targets.column(ref).null_count_out) {
        complain(schema.column_display(ref) + ": " + std::to_string(nulls[c]) +
                 " NULLs, expected " + std::to_string(plan.targets.column(ref).null_count_out));
      }
      std::uint64_t expected = plan.targets.expected_distinct(ref);
      if (values[t][c].size() != expected) {
        complain(schema.column_display(ref) + ": " + std::to_string(values[t][c].size()) +
                 " distinct values, expected " + std::to_string(expected));
      }
    }
  }

  for (const ForeignKey& fk : schema.foreign_keys) {
    const auto& child = values[fk.child.table][fk.child.column];
    const auto& parent = values[fk.parent.table][fk.parent.column];
    std::uint64_t missing = 0;
    std::string example;
    for (const std::string& v : child) {
      if (parent.count(v) == 0) {
        if (missing == 0) example = v;
        ++missing;
      }
    }
    if (missing > 0) {
      complain("foreign key " + schema.column_display(fk.child) + " -> " +
               schema.column_display(fk.parent) + ": " + std::to_string(missing) +
               " orphaned value(s), e.g. '" + example + "'");
    }
  }

  // Pairwise overlaps within each cluster must equal the shared planned
  // width (regions containing both columns).
  for (const ColumnsCluster& cluster : plan.clusters) {
    for (std::size_t i = 0; i < cluster.members.size(); ++i) {
      for (std::size_t j = i + 1; j < cluster.members.size(); ++j) {
        ColumnRef a = cluster.members[i], b = cluster.members[j];
        std::uint64_t planned = 0;
        for (const Interval& iv : plan.column_intervals(a)) {
          if (iv.tag == IntervalTag::VennRegion && ((iv.region_mask >> j) & 1u)) {
            planned += iv.width();
          }
        }
        const auto& va = values[a.table][a.column];
        const auto& vb = values[b.table][b.column];
        std::uint64_t actual = 0;
        for (const std::string& v : va) {
          if (vb.count(v) > 0) ++actual;
        }
        if (actual != planned) {
          complain("overlap of " + schema.column_display(a) + " and " +
                   schema.column_display(b) + ": " + std::to_string(actual) + " values, planned " +
                   std::to_string(planned));
        }
      }
    }
  }
  return violations;
}

}  // namespace vig
