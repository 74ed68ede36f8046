// Acceptance gate: one check per stated criterion, one PASS/FAIL line each,
// nonzero exit when anything fails.  Run via ctest or directly.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "fixture.hpp"
#include "vig/csp.hpp"
#include "vig/csv.hpp"
#include "vig/datatype.hpp"
#include "vig/error.hpp"
#include "vig/pipeline.hpp"
#include "vig/prng.hpp"

using namespace vig;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct TableScan {
  std::uint64_t rows = 0;
  std::vector<std::uint64_t> nulls;
  std::vector<std::unordered_set<std::string>> values;
  std::uint64_t pk_duplicates = 0;
};

TableScan scan_csv(const Schema& schema, std::uint32_t t, const std::string& dir) {
  const Table& table = schema.tables[t];
  TableScan scan;
  scan.nulls.resize(table.columns.size(), 0);
  scan.values.resize(table.columns.size());
  std::unordered_set<std::string> pk_seen;

  CsvReader reader(dir + "/" + table.name + ".csv");
  std::vector<std::string> fields;
  std::vector<bool> nulls;
  if (!reader.next(fields, nulls)) throw ParseError(table.name + ": missing header");
  while (reader.next(fields, nulls)) {
    if (fields.size() != table.columns.size()) {
      throw ParseError(table.name + ": ragged row");
    }
    ++scan.rows;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (nulls[c]) {
        ++scan.nulls[c];
        continue;
      }
      auto canon = canonical_value(table.columns[c].type, fields[c]);
      if (!canon) throw ParseError(table.name + ": unparseable '" + fields[c] + "'");
      scan.values[c].insert(*canon);
    }
    if (!table.primary_key.empty()) {
      std::string key;
      for (std::uint32_t c : table.primary_key) {
        key += fields[c];
        key += '\x1f';
      }
      if (!pk_seen.insert(key).second) ++scan.pk_duplicates;
    }
  }
  return scan;
}

// Shared context: seed instance on disk plus the runs most criteria reuse.
struct Context {
  fixture::TempDir seed{"vig-accept-seed"};
  fixture::TempDir out1{"vig-accept-s1"};
  fixture::TempDir out2{"vig-accept-s2"};
  fixture::TempDir out10{"vig-accept-s10"};
  RunResult run1, run2, run10;
  std::vector<TableScan> scan10;

  RunConfig config(const std::string& out_dir, Rational scale) const {
    RunConfig c;
    c.schema_path = seed.path() + "/schema.txt";
    c.mappings_path = seed.path() + "/mappings.txt";
    c.data_dir = seed.path();
    c.out_dir = out_dir;
    c.scale = scale;
    c.seed = 42;
    c.parallelism = 1;
    return c;
  }

  void prepare() {
    fixture::write_seed(seed.path());
    std::ofstream(seed.path() + "/schema.txt", std::ios::binary) << fixture::schema_text();
    std::ofstream(seed.path() + "/mappings.txt", std::ios::binary) << fixture::mappings_text();
    run1 = run_pipeline(config(out1.path(), Rational::of(1, 1)));
    run2 = run_pipeline(config(out2.path(), Rational::of(2, 1)));
    RunConfig c10 = config(out10.path(), Rational::of(10, 1));
    c10.validate = true;
    run10 = run_pipeline(c10);
    for (std::uint32_t t = 0; t < run10.schema.tables.size(); ++t) {
      scan10.push_back(scan_csv(run10.schema, t, out10.path()));
    }
  }
};

// ---- criterion 1: permutation correctness --------------------------------

bool criterion_permutations(Context&, std::string& detail) {
  auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint64_t n = 1 + rng() % 100'000;
    PermutationCursor cursor{PermutationGenerator::make(n)};
    std::vector<bool> seen(n + 1, false);
    for (std::uint64_t i = 0; i < n; ++i) {
      std::uint64_t v = cursor.next();
      if (v < 1 || v > n || seen[v]) {
        detail = "trial " + std::to_string(trial) + ": value " + std::to_string(v) +
                 " repeats or escapes [1," + std::to_string(n) + "]";
        return false;
      }
      seen[v] = true;
    }
  }
  double elapsed = seconds_since(start);
  detail = "200 permutations in " + std::to_string(elapsed) + " s";
  return elapsed < 30.0;
}

// ---- criterion 2: scaled sizes -------------------------------------------

bool criterion_sizes(Context& ctx, std::string& detail) {
  const std::uint64_t seed_rows[5] = {fixture::kDevRows, fixture::kExpRows, fixture::kFieldRows,
                                      fixture::kOfficeRows, fixture::kCoreRows};
  struct Run {
    const RunResult* result;
    Rational s;
  } runs[] = {{&ctx.run1, Rational::of(1, 1)},
              {&ctx.run2, Rational::of(2, 1)},
              {&ctx.run10, Rational::of(10, 1)}};
  for (const Run& run : runs) {
    for (std::size_t t = 0; t < 5; ++t) {
      std::uint64_t expect = scale_round_half_up(seed_rows[t], run.s);
      std::uint64_t got = run.result->summary.tables[t].rows;
      if (got != expect) {
        detail = run.result->schema.tables[t].name + " at s=" + std::to_string(run.s.num) + "/" +
                 std::to_string(run.s.den) + ": " + std::to_string(got) + " rows, expected " +
                 std::to_string(expect);
        return false;
      }
    }
  }
  detail = "row counts exact for s in {1, 2, 10}";
  return true;
}

// ---- criterion 3: key integrity ------------------------------------------

bool criterion_keys(Context& ctx, std::string& detail) {
  if (!ctx.run10.violations.empty()) {
    detail = "validate_output: " + ctx.run10.violations.front();
    return false;
  }
  // Independent re-check of the same properties.
  const Schema& schema = ctx.run10.schema;
  for (std::uint32_t t = 0; t < schema.tables.size(); ++t) {
    if (ctx.scan10[t].pk_duplicates > 0) {
      detail = schema.tables[t].name + ": " + std::to_string(ctx.scan10[t].pk_duplicates) +
               " duplicate keys";
      return false;
    }
  }
  for (const ForeignKey& fk : schema.foreign_keys) {
    const auto& child = ctx.scan10[fk.child.table].values[fk.child.column];
    const auto& parent = ctx.scan10[fk.parent.table].values[fk.parent.column];
    for (const std::string& v : child) {
      if (parent.count(v) == 0) {
        detail = "orphan " + v + " under " + schema.column_display(fk.child);
        return false;
      }
    }
  }
  detail = "no PK duplicates, no FK orphans at s=10 (weakly-identified table included)";
  return true;
}

// ---- criterion 4: distinct and NULL fidelity -----------------------------

bool criterion_distinct_nulls(Context& ctx, std::string& detail) {
  const Schema& schema = ctx.run10.schema;
  const IntervalPlan& plan = ctx.run10.plan;
  for (std::uint32_t t = 0; t < schema.tables.size(); ++t) {
    std::uint64_t rows_out = plan.targets.tables[t].rows_out;
    for (std::uint32_t c = 0; c < schema.tables[t].columns.size(); ++c) {
      ColumnRef ref{t, c};
      std::uint64_t expected = plan.targets.expected_distinct(ref);
      std::uint64_t got = ctx.scan10[t].values[c].size();
      if (got != expected) {
        detail = schema.column_display(ref) + ": distinct " + std::to_string(got) +
                 ", planned " + std::to_string(expected);
        return false;
      }
      const ColumnStats& seed = ctx.run10.stats.column(ref);
      double ratio_target =
          ctx.run10.stats.tables[t].rows == 0
              ? 0.0
              : static_cast<double>(seed.null_count) /
                    static_cast<double>(ctx.run10.stats.tables[t].rows) *
                    static_cast<double>(rows_out);
      if (std::abs(static_cast<double>(ctx.scan10[t].nulls[c]) - ratio_target) > 1.0 + 1e-9) {
        detail = schema.column_display(ref) + ": " + std::to_string(ctx.scan10[t].nulls[c]) +
                 " NULLs vs target " + std::to_string(ratio_target);
        return false;
      }
    }
  }
  detail = "distinct counts exact, NULL counts within 1 of the seed ratio";
  return true;
}

// ---- criterion 5: fixed-domain preservation ------------------------------

bool criterion_fixed_domain(Context& ctx, std::string& detail) {
  std::set<std::string> seed_states = {"suspended", "active", "completed", "plugged"};
  struct Run {
    const char* label;
    const std::string dir;
    const Schema* schema;
  } runs[] = {{"s=1", ctx.out1.path(), &ctx.run1.schema},
              {"s=2", ctx.out2.path(), &ctx.run2.schema},
              {"s=10", ctx.out10.path(), &ctx.run10.schema}};
  for (const Run& run : runs) {
    TableScan scan = scan_csv(*run.schema, 1, run.dir);  // exploration_wellbores
    std::set<std::string> got(scan.values[3].begin(), scan.values[3].end());
    if (got != seed_states) {
      detail = std::string(run.label) + ": state set has " + std::to_string(got.size()) +
               " values";
      return false;
    }
    if (got.count("suspended") == 0) {
      detail = std::string(run.label) + ": 'suspended' missing";
      return false;
    }
  }
  detail = "state value set preserved at every scale, 'suspended' included";
  return true;
}

// ---- criterion 6: selectivity preservation -------------------------------

bool criterion_selectivity(Context& ctx, std::string& detail) {
  // Overlapping name columns: |∩| must scale with s.
  const auto& dev_names = ctx.scan10[0].values[1];
  const auto& exp_names = ctx.scan10[1].values[1];
  std::uint64_t overlap = 0;
  for (const std::string& v : dev_names) overlap += exp_names.count(v);
  std::uint64_t target = scale_round_half_up(fixture::kSharedNames, Rational::of(10, 1));
  if (overlap + 1 < target || overlap > target + 1) {
    detail = "name overlap " + std::to_string(overlap) + " vs target " + std::to_string(target);
    return false;
  }
  // Disjoint id columns stay disjoint.
  const auto& dev_ids = ctx.scan10[0].values[0];
  const auto& exp_ids = ctx.scan10[1].values[0];
  std::uint64_t id_overlap = 0;
  for (const std::string& v : dev_ids) id_overlap += exp_ids.count(v);
  if (id_overlap != 0) {
    detail = "id overlap " + std::to_string(id_overlap) + ", expected 0";
    return false;
  }
  detail = "name overlap " + std::to_string(overlap) + " (target " + std::to_string(target) +
           "), id overlap 0";
  return true;
}

// ---- criterion 7: CSP soundness ------------------------------------------

bool brute_force_sat(const CspProblem& p) {
  std::size_t n = p.vars.size();
  std::vector<std::int64_t> cur(n);
  for (std::size_t i = 0; i < n; ++i) cur[i] = p.vars[i].min;
  while (true) {
    bool ok = true;
    for (const auto& le : p.les) {
      if (cur[le.a] > cur[le.b]) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (const auto& sum : p.sums) {
        std::int64_t total = 0;
        for (auto y : sum.ys) total += cur[y];
        for (auto x : sum.xs) total -= cur[x];
        if (total != sum.total) {
          ok = false;
          break;
        }
      }
    }
    if (ok) return true;
    std::size_t i = 0;
    while (i < n && cur[i] == p.vars[i].max) cur[i] = p.vars[i].min, ++i;
    if (i == n) return false;
    ++cur[i];
  }
}

bool criterion_csp(Context&, std::string& detail) {
  std::mt19937_64 rng(31);
  int sat = 0, unsat = 0;
  for (int trial = 0; trial < 50; ++trial) {
    CspProblem p;
    if (trial % 2 == 0) {
      // Interval-boundary shape: a fixed parent layout of two regions and a
      // free child column with X/Y per region plus a width sum.
      std::int64_t w1 = 1 + static_cast<std::int64_t>(rng() % 4);
      std::int64_t w2 = 1 + static_cast<std::int64_t>(rng() % 4);
      std::int64_t lo2 = 1 + w1;
      auto xp1 = p.add_var(1, 1, "xp1");
      auto yp1 = p.add_var(1 + w1, 1 + w1, "yp1");
      auto xp2 = p.add_var(lo2, lo2, "xp2");
      auto yp2 = rng() % 2 == 0 ? p.add_var(lo2 + w2, lo2 + w2, "yp2")
                                : p.add_var(lo2, lo2, "yp2");  // region absent
      auto xc1 = p.add_var(1, 1 + w1, "xc1");
      auto yc1 = p.add_var(1, 1 + w1, "yc1");
      auto xc2 = p.add_var(lo2, lo2 + w2, "xc2");
      auto yc2 = p.add_var(lo2, lo2 + w2, "yc2");
      p.les.push_back({xc1, yc1});
      p.les.push_back({xc2, yc2});
      p.les.push_back({xp1, xc1});
      p.les.push_back({yc1, yp1});
      p.les.push_back({xp2, xc2});
      p.les.push_back({yc2, yp2});
      CspProblem::Sum width;
      width.ys = {yc1, yc2};
      width.xs = {xc1, xc2};
      width.total = static_cast<std::int64_t>(rng() % (w1 + w2 + 2));
      p.sums.push_back(std::move(width));
    } else {
      std::size_t nvars = 2 + rng() % 5;
      for (std::size_t i = 0; i < nvars; ++i) {
        std::int64_t lo = static_cast<std::int64_t>(rng() % 5);
        p.add_var(lo, lo + static_cast<std::int64_t>(rng() % 4), "v" + std::to_string(i));
      }
      for (std::size_t i = 0, e = rng() % 4; i < e; ++i) {
        auto a = static_cast<std::uint32_t>(rng() % nvars);
        auto b = static_cast<std::uint32_t>(rng() % nvars);
        if (a != b) p.les.push_back({a, b});
      }
      for (std::size_t i = 0, e = 1 + rng() % 2; i < e; ++i) {
        CspProblem::Sum sum;
        for (std::size_t k = 0, terms = 1 + rng() % 3; k < terms; ++k) {
          auto v = static_cast<std::uint32_t>(rng() % nvars);
          (rng() % 2 == 0 ? sum.ys : sum.xs).push_back(v);
        }
        sum.total = static_cast<std::int64_t>(rng() % 13) - 6;
        p.sums.push_back(std::move(sum));
      }
    }

    bool expected = brute_force_sat(p);
    std::optional<CspSolution> solution = csp_solve(p);
    if (solution.has_value() != expected) {
      detail = "trial " + std::to_string(trial) + ": solver " +
               (solution ? "SAT" : "UNSAT") + ", brute force says " +
               (expected ? "SAT" : "UNSAT");
      return false;
    }
    if (solution) {
      if (!csp_verify(p, *solution)) {
        detail = "trial " + std::to_string(trial) + ": solution fails the verifier";
        return false;
      }
      ++sat;
    } else {
      ++unsat;
    }
  }
  detail = std::to_string(sat) + " SAT / " + std::to_string(unsat) +
           " UNSAT, all matching brute force";
  return true;
}

// ---- criterion 8: determinism --------------------------------------------

bool criterion_determinism(Context& ctx, std::string& detail) {
  fixture::TempDir rerun("vig-accept-rerun");
  fixture::TempDir par8("vig-accept-par8");
  RunConfig again = ctx.config(rerun.path(), Rational::of(10, 1));
  run_pipeline(again);
  RunConfig parallel = ctx.config(par8.path(), Rational::of(10, 1));
  parallel.parallelism = 8;
  run_pipeline(parallel);

  for (const Table& table : ctx.run10.schema.tables) {
    std::string base = slurp(ctx.out10.path() + "/" + table.name + ".csv");
    if (base != slurp(rerun.path() + "/" + table.name + ".csv")) {
      detail = table.name + ": re-run differs";
      return false;
    }
    if (base != slurp(par8.path() + "/" + table.name + ".csv")) {
      detail = table.name + ": parallelism 8 differs from 1";
      return false;
    }
  }
  detail = "re-run and parallelism-8 outputs byte-identical";
  return true;
}

// ---- criterion 9: throughput ---------------------------------------------

double per_row_cost(Context& ctx, Rational s, int repetitions) {
  double best = 1e300;
  for (int i = 0; i < repetitions; ++i) {
    fixture::TempDir out("vig-accept-cost", "acceptance-scratch");
    RunConfig config = ctx.config(out.path(), s);
    config.parallelism = 4;
    RunResult result = run_pipeline(config);
    std::uint64_t rows = 0;
    for (const auto& t : result.summary.tables) rows += t.rows;
    best = std::min(best, result.summary.elapsed_seconds / static_cast<double>(rows));
  }
  return best;
}

bool criterion_throughput(Context& ctx, std::string& detail) {
  namespace fs = std::filesystem;
  fs::create_directories("acceptance-scratch");
  double cost10 = per_row_cost(ctx, Rational::of(10, 1), 5);
  double cost100 = per_row_cost(ctx, Rational::of(100, 1), 3);

  // 4620 seed rows * 2165 > 10^7 output rows.
  auto start = std::chrono::steady_clock::now();
  std::uint64_t rows = 0;
  {
    fixture::TempDir big("vig-accept-big", "acceptance-scratch");
    RunConfig config = ctx.config(big.path(), Rational::of(2165, 1));
    config.parallelism = 4;
    RunResult result = run_pipeline(config);
    for (const auto& t : result.summary.tables) rows += t.rows;
  }
  double elapsed = seconds_since(start);
  std::error_code ec;
  fs::remove_all("acceptance-scratch", ec);

  if (rows < 10'000'000) {
    detail = "only " + std::to_string(rows) + " rows generated";
    return false;
  }
  if (elapsed >= 600.0) {
    detail = std::to_string(rows) + " rows took " + std::to_string(elapsed) + " s";
    return false;
  }
  double ratio = cost100 / cost10;
  if (ratio < 0.8 || ratio > 1.2) {
    detail = "per-row cost ratio s=100/s=10 is " + std::to_string(ratio);
    return false;
  }
  detail = std::to_string(rows) + " rows in " + std::to_string(elapsed) +
           " s; cost ratio " + std::to_string(ratio);
  return true;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<bool(Context&, std::string&)> check;
  };
  const Criterion criteria[] = {
      {"permutation correctness", criterion_permutations},
      {"scaled sizes", criterion_sizes},
      {"key integrity", criterion_keys},
      {"distinct and NULL fidelity", criterion_distinct_nulls},
      {"fixed-domain preservation", criterion_fixed_domain},
      {"selectivity preservation", criterion_selectivity},
      {"CSP soundness", criterion_csp},
      {"determinism", criterion_determinism},
      {"throughput sanity", criterion_throughput},
  };

  Context ctx;
  try {
    ctx.prepare();
  } catch (const std::exception& e) {
    std::printf("FAIL 0/9 fixture preparation: %s\n", e.what());
    return 1;
  }

  int failed = 0;
  int index = 0;
  for (const Criterion& criterion : criteria) {
    ++index;
    std::string detail;
    bool ok = false;
    try {
      ok = criterion.check(ctx, detail);
    } catch (const std::exception& e) {
      detail = e.what();
    }
    std::printf("%s %d/9 %s%s%s\n", ok ? "PASS" : "FAIL", index, criterion.name,
                detail.empty() ? "" : " — ", detail.c_str());
    std::fflush(stdout);
    failed += ok ? 0 : 1;
  }
  if (failed > 0) {
    std::printf("%d criterion(s) failed\n", failed);
    return 1;
  }
  std::printf("all 9 criteria passed\n");
  return 0;
}
