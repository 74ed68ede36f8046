#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "vig/error.hpp"
#include "vig/pipeline.hpp"

namespace {

int exit_code_for(vig::ErrorKind kind) {
  switch (kind) {
    case vig::ErrorKind::Parse:
      return 2;
    case vig::ErrorKind::Validation:
      return 3;
    case vig::ErrorKind::Unsat:
      return 4;
    case vig::ErrorKind::Io:
      return 5;
    case vig::ErrorKind::Resource:
      return 6;
    case vig::ErrorKind::Internal:
      return 1;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "vig: scale a relational instance by a rational factor, preserving keys,\n"
      "distinct/NULL profiles, fixed domains, and mapping-induced join overlaps"};

  vig::RunConfig config;
  std::string scale_text;
  app.add_option("--schema", config.schema_path, "schema definition file")->required();
  app.add_option("--data", config.data_dir, "directory holding the seed <table>.csv files")
      ->required();
  app.add_option("--out", config.out_dir, "output directory")->required();
  app.add_option("--scale", scale_text, "scale factor: integer, decimal, or num/den")
      ->required();
  app.add_option("--mappings", config.mappings_path, "mapping assertions file");
  app.add_option("--seed", config.seed, "seed rotating the per-column permutation phases");
  app.add_option("--parallelism", config.parallelism, "worker threads for scan and export")
      ->check(CLI::Range(1u, 256u));
  app.add_option("--fixed", config.fixed,
                 "extra fixed-domain column as table.column (repeatable)");
  app.add_flag("--report-only", config.report_only,
               "stop after planning and print the interval plan");
  app.add_option("--venn-cap", config.venn_cap, "largest allowed cluster size")
      ->check(CLI::Range(1u, 31u));
  app.add_flag("--validate", config.validate,
               "re-scan the generated instance and check it against the plan");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help/--version exit 0; bad usage is a parse failure
  }

  try {
    config.scale = vig::Rational::parse(scale_text);
    vig::RunResult result = vig::run_pipeline(config);
    if (config.report_only) {
      std::fputs(result.plan_text.c_str(), stdout);
      return 0;
    }
    for (const auto& table : result.summary.tables) {
      std::printf("%s: %llu rows, %llu bytes\n", table.name.c_str(),
                  static_cast<unsigned long long>(table.rows),
                  static_cast<unsigned long long>(table.bytes));
    }
    std::printf("generated %zu table(s) in %.2f s\n", result.summary.tables.size(),
                result.summary.elapsed_seconds);
    if (!result.violations.empty()) {
      for (const std::string& v : result.violations) {
        std::fprintf(stderr, "vig: validation: %s\n", v.c_str());
      }
      return 3;
    }
    return 0;
  } catch (const vig::Error& e) {
    std::fprintf(stderr, "vig: %s\n", e.what());
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "vig: %s\n", e.what());
    return 1;
  }
}
