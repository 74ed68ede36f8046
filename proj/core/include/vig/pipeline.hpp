#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "vig/generator.hpp"
#include "vig/intervals.hpp"
#include "vig/mapping.hpp"
#include "vig/rational.hpp"
#include "vig/schema.hpp"
#include "vig/stats.hpp"

namespace vig {

struct RunConfig {
  std::string schema_path;
  std::string mappings_path;  // empty: no mappings, hence no clusters
  std::string data_dir;
  std::string out_dir;
  Rational scale;
  std::uint64_t seed = 0;
  unsigned parallelism = 1;
  std::vector<std::string> fixed;  // extra fixed-domain columns, "table.column"
  bool report_only = false;
  unsigned venn_cap = 12;
  bool validate = false;  // re-scan the output and check it against the plan
};

struct RunResult {
  Schema schema;
  InstanceStats stats;
  std::vector<ColumnsCluster> clusters;
  IntervalPlan plan;
  std::string plan_text;
  ExportSummary summary;                // report_only leaves this empty
  std::vector<std::string> violations;  // filled by RunConfig::validate
};

// End-to-end run: load inputs, derive the plan, write `<out>/_plan.txt`,
// then (unless report_only) generate every table plus `<out>/_report.txt`.
RunResult run_pipeline(const RunConfig& config);

// Resolves "table.column" names; unknown names raise ValidationError.
std::set<ColumnRef> resolve_column_list(const Schema& schema,
                                        const std::vector<std::string>& names);

// Re-reads an exported instance and checks it against the plan: row counts,
// primary/foreign keys, per-column distinct and NULL counts, pairwise
// cluster overlaps.  Returns human-readable violations; empty means clean.
std::vector<std::string> validate_output(const Schema& schema, const IntervalPlan& plan,
                                         const std::string& out_dir);

}  // namespace vig
