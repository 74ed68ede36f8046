#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "fixture.hpp"
#include "vig/datatype.hpp"
#include "vig/error.hpp"
#include "vig/generator.hpp"
#include "vig/mapping.hpp"
#include "vig/pipeline.hpp"

using namespace vig;

namespace {

Interval simple(std::int64_t lo, std::int64_t hi) {
  Interval iv;
  iv.lo = lo;
  iv.hi = hi;
  return iv;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// A one-table, one-column world for emitter-level tests.
struct MiniWorld {
  Schema schema;
  InstanceStats stats;
  IntervalPlan plan;

  MiniWorld(const std::string& schema_text, std::vector<Interval> intervals,
            std::uint64_t rows_out, std::uint64_t nulls_out, ColumnStats cs = {}) {
    schema = load_schema(schema_text);
    stats.tables.resize(1);
    stats.tables[0].rows = rows_out;
    stats.tables[0].columns = {cs};
    plan.targets.tables.resize(1);
    plan.targets.tables[0].rows_out = rows_out;
    plan.targets.tables[0].columns.resize(1);
    std::uint64_t width = 0;
    for (const Interval& iv : intervals) width += iv.width();
    plan.targets.tables[0].columns[0].distinct_out = width;
    plan.targets.tables[0].columns[0].null_count_out = nulls_out;
    plan.targets.tables[0].columns[0].fixed_domain = !cs.domain_values.empty();
    plan.intervals = {{std::move(intervals)}};
    plan.clusters = {};
    plan.components = join_components(schema, {});
  }
};

std::vector<std::string> emit_all(ColumnEmitter& emitter, std::uint64_t rows,
                                  std::vector<bool>* null_flags = nullptr) {
  std::string data;
  std::vector<std::uint64_t> ends;
  emitter.emit_chunk(0, rows, data, ends);
  std::vector<std::string> fields;
  std::uint64_t prev = 0;
  for (std::uint64_t r = 0; r < rows; ++r) {
    fields.push_back(data.substr(prev, ends[r] - prev));
    if (null_flags != nullptr) null_flags->push_back(ends[r] == prev);
    prev = ends[r];
  }
  return fields;
}

}  // namespace

TEST_CASE("address_in_intervals maps the documented example") {
  std::vector<Interval> intervals = {simple(10, 12), simple(20, 21)};
  CHECK(address_in_intervals(intervals, 1) == 10);
  CHECK(address_in_intervals(intervals, 2) == 11);
  CHECK(address_in_intervals(intervals, 3) == 12);
  CHECK(address_in_intervals(intervals, 4) == 20);
  CHECK(address_in_intervals(intervals, 5) == 21);
  CHECK_THROWS_AS((void)address_in_intervals(intervals, 6), Error);
}

TEST_CASE("an emitter covers its whole address space before repeating") {
  MiniWorld world("table t(a:INTEGER)\n", {simple(10, 12), simple(20, 21)}, 10, 0);
  ColumnEmitter emitter(world.schema, world.stats, world.plan, {0, 0}, 1);
  auto fields = emit_all(emitter, 10);
  std::multiset<std::string> first(fields.begin(), fields.begin() + 5);
  std::multiset<std::string> second(fields.begin() + 5, fields.end());
  std::multiset<std::string> expected = {"10", "11", "12", "20", "21"};
  CHECK(first == expected);
  CHECK(second == expected);
}

TEST_CASE("emitted addresses agree with address_at") {
  MiniWorld world("table t(a:INTEGER)\n", {simple(100, 104)}, 5, 0);
  ColumnEmitter emitter(world.schema, world.stats, world.plan, {0, 0}, 9);
  auto fields = emit_all(emitter, 5);
  for (std::uint64_t i = 0; i < 5; ++i) {
    CHECK(fields[i] == std::to_string(emitter.address_at(i)));
  }
}

TEST_CASE("NULL scheduling is exact and evenly spread") {
  for (auto [rows, nulls] : std::vector<std::pair<std::uint64_t, std::uint64_t>>{
           {10, 3}, {100, 1}, {7, 7}, {16, 8}, {1000, 333}}) {
    MiniWorld world("table t(a:INTEGER NULL)\n", {simple(1, 2)}, rows, nulls);
    ColumnEmitter emitter(world.schema, world.stats, world.plan, {0, 0}, 4);
    std::uint64_t count = 0;
    std::vector<std::uint64_t> gaps;
    std::uint64_t last_null = 0;
    bool seen = false;
    for (std::uint64_t r = 0; r < rows; ++r) {
      if (emitter.null_at(r)) {
        if (seen) gaps.push_back(r - last_null);
        last_null = r;
        seen = true;
        ++count;
      }
    }
    CHECK_MESSAGE(count == nulls, "rows ", rows, " nulls ", nulls);
    if (gaps.size() > 1) {
      auto [lo, hi] = std::minmax_element(gaps.begin(), gaps.end());
      CHECK_MESSAGE(*hi - *lo <= 1, "uneven NULL spacing at rows ", rows);
    }
  }
}

TEST_CASE("NULL rows do not advance the value cycle") {
  // 6 rows, 3 nulls, a domain of 3: every domain value must still appear.
  MiniWorld world("table t(a:INTEGER NULL)\n", {simple(7, 9)}, 6, 3);
  ColumnEmitter emitter(world.schema, world.stats, world.plan, {0, 0}, 2);
  std::vector<bool> null_flags;
  auto fields = emit_all(emitter, 6, &null_flags);
  std::set<std::string> non_null;
  std::uint64_t nulls = 0;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (null_flags[i]) {
      ++nulls;
    } else {
      non_null.insert(fields[i]);
    }
  }
  CHECK(nulls == 3);
  CHECK(non_null == std::set<std::string>{"7", "8", "9"});
}

TEST_CASE("chunk boundaries do not change the stream") {
  MiniWorld world("table t(a:INTEGER NULL)\n", {simple(1, 50)}, 200, 40);
  ColumnEmitter whole(world.schema, world.stats, world.plan, {0, 0}, 5);
  std::string data_whole;
  std::vector<std::uint64_t> ends_whole;
  whole.emit_chunk(0, 200, data_whole, ends_whole);

  ColumnEmitter chunked(world.schema, world.stats, world.plan, {0, 0}, 5);
  std::string data_parts;
  for (std::uint64_t begin = 0; begin < 200; begin += 33) {
    std::vector<std::uint64_t> ends;
    std::string part;
    chunked.emit_chunk(begin, std::min<std::uint64_t>(200, begin + 33), part, ends);
    data_parts += part;
  }
  CHECK(data_whole == data_parts);
}

TEST_CASE("different seeds rotate the emission phase") {
  MiniWorld world("table t(a:INTEGER)\n", {simple(1, 97)}, 97, 0);
  ColumnEmitter a(world.schema, world.stats, world.plan, {0, 0}, 1);
  ColumnEmitter b(world.schema, world.stats, world.plan, {0, 0}, 2);
  auto fa = emit_all(a, 97);
  auto fb = emit_all(b, 97);
  CHECK(fa != fb);  // phases differ...
  CHECK(std::multiset<std::string>(fa.begin(), fa.end()) ==
        std::multiset<std::string>(fb.begin(), fb.end()));  // ...but cover the same set
}

TEST_CASE("encoders render each datatype canonically") {
  SUBCASE("date") {
    MiniWorld world("table t(a:DATE)\n", {simple(days_from_civil(2001, 2, 3), days_from_civil(2001, 2, 4))}, 2, 0);
    ColumnEmitter emitter(world.schema, world.stats, world.plan, {0, 0}, 0);
    auto fields = emit_all(emitter, 2);
    std::set<std::string> got(fields.begin(), fields.end());
    CHECK(got == std::set<std::string>{"2001-02-03", "2001-02-04"});
  }
  SUBCASE("decimal strips trailing fractional zeros") {
    ColumnStats cs;
    cs.decimal_scale = 1;
    MiniWorld world("table t(a:DECIMAL)\n", {simple(12050, 12051)}, 2, 0, cs);
    ColumnEmitter emitter(world.schema, world.stats, world.plan, {0, 0}, 0);
    auto fields = emit_all(emitter, 2);
    std::set<std::string> got(fields.begin(), fields.end());
    CHECK(got == std::set<std::string>{"1205", "1205.1"});
  }
  SUBCASE("text uses the canonical component prefix") {
    MiniWorld world("table t(a:TEXT)\n", {simple(5, 6)}, 2, 0);
    ColumnEmitter emitter(world.schema, world.stats, world.plan, {0, 0}, 0);
    auto fields = emit_all(emitter, 2);
    std::set<std::string> got(fields.begin(), fields.end());
    CHECK(got == std::set<std::string>{"t_a_5", "t_a_6"});
  }
  SUBCASE("fixed domains emit the seed spellings") {
    ColumnStats cs;
    cs.distinct = 2;
    cs.domain_values = {"true", "false"};
    MiniWorld world("table t(a:BOOLEAN)\n", {simple(1, 2)}, 4, 0, cs);
    ColumnEmitter emitter(world.schema, world.stats, world.plan, {0, 0}, 0);
    auto fields = emit_all(emitter, 4);
    std::multiset<std::string> got(fields.begin(), fields.end());
    CHECK(got == std::multiset<std::string>{"false", "false", "true", "true"});
  }
}

TEST_CASE("foreign-key endpoints share one text encoding") {
  Schema schema = load_schema(
      "table p(a:TEXT)\npk p(a)\ntable c(b:TEXT)\nfk c.b -> p.a\n");
  InstanceStats stats;
  stats.tables.resize(2);
  stats.tables[0].rows = 4;
  stats.tables[0].columns.resize(1);
  stats.tables[0].columns[0].distinct = 4;
  stats.tables[1].rows = 4;
  stats.tables[1].columns.resize(1);
  stats.tables[1].columns[0].distinct = 2;

  IntervalPlan plan;
  plan.targets.tables.resize(2);
  plan.targets.tables[0].rows_out = 4;
  plan.targets.tables[0].columns.resize(1);
  plan.targets.tables[0].columns[0].distinct_out = 4;
  plan.targets.tables[1].rows_out = 4;
  plan.targets.tables[1].columns.resize(1);
  plan.targets.tables[1].columns[0].distinct_out = 2;
  plan.intervals = {{{simple(1, 4)}}, {{simple(1, 2)}}};
  plan.components = join_components(schema, {});

  ColumnEmitter parent(schema, stats, plan, {0, 0}, 3);
  ColumnEmitter child(schema, stats, plan, {1, 0}, 3);
  auto pv = emit_all(parent, 4);
  auto cv = emit_all(child, 4);
  std::set<std::string> parent_set(pv.begin(), pv.end());
  for (const std::string& v : cv) {
    CHECK_MESSAGE(parent_set.count(v) == 1, "child value ", v, " missing from parent");
    CHECK(v.rfind("p_a_", 0) == 0);  // canonical prefix is the parent's
  }
}

TEST_CASE("export produces byte-identical files across parallelism") {
  Schema schema = load_schema(fixture::schema_text());
  fixture::TempDir seed_dir("vig-gen-seed");
  fixture::write_seed(seed_dir.path());
  auto mappings = parse_mappings(fixture::mappings_text(), schema);
  std::set<ColumnRef> fixed = detect_fixed_domain(mappings, schema);
  fixed.insert(ColumnRef{3, 2});
  InstanceStats stats = scan_instance(schema, seed_dir.path(), fixed, 2);
  auto clusters = merge_clusters(extract_preclusters(mappings, schema), schema);
  std::vector<VennCounts> venns;
  for (const auto& c : clusters) venns.push_back(venn_profile(schema, c.members, seed_dir.path()));
  ScaleTargets targets = initialize_targets(schema, stats, fixed, Rational::of(2, 1));
  repair_primary_keys(schema, targets);
  IntervalPlan plan = plan_intervals(schema, stats, targets, clusters, venns, Rational::of(2, 1));

  fixture::TempDir out1("vig-gen-out1");
  fixture::TempDir out4("vig-gen-out4");
  ExportSummary s1 = export_instance(schema, stats, plan, out1.path(), 42, 1);
  ExportSummary s4 = export_instance(schema, stats, plan, out4.path(), 42, 4);
  REQUIRE(s1.tables.size() == schema.tables.size());
  for (std::size_t t = 0; t < schema.tables.size(); ++t) {
    CHECK(s1.tables[t].rows == plan.targets.tables[t].rows_out);
    std::string f1 = slurp(out1.path() + "/" + schema.tables[t].name + ".csv");
    std::string f4 = slurp(out4.path() + "/" + schema.tables[t].name + ".csv");
    CHECK_MESSAGE(f1 == f4, "table ", schema.tables[t].name, " differs across parallelism");
    CHECK(f1.size() == s1.tables[t].bytes);
  }
}

TEST_CASE("export rows carry the header and exact row counts") {
  MiniWorld world("table t(a:INTEGER)\n", {simple(1, 7)}, 7, 0);
  fixture::TempDir out("vig-gen-rows");
  ExportSummary summary = export_instance(world.schema, world.stats, world.plan, out.path(), 0, 1);
  std::string content = slurp(out.path() + "/t.csv");
  REQUIRE(summary.tables.size() == 1);
  CHECK(summary.tables[0].rows == 7);
  CHECK(content.substr(0, 2) == "a\n");
  std::size_t lines = 0;
  for (char c : content) lines += c == '\n';
  CHECK(lines == 8);  // header + 7 rows
}
