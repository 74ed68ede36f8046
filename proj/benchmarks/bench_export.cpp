#include <benchmark/benchmark.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>

#include <unistd.h>

#include "vig/datatype.hpp"
#include "vig/pipeline.hpp"

namespace fs = std::filesystem;

namespace {

// Self-contained two-table seed: an FK pair plus one column of every encoder
// family (integer, text, decimal, date, nullable text).
constexpr std::uint64_t kReadingRows = 4000;
constexpr std::uint64_t kSensorRows = 400;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

std::string scratch_root() {
  static std::string root = [] {
    fs::path dir = fs::temp_directory_path() /
                   ("vig-bench-" + std::to_string(static_cast<long>(getpid())));
    fs::create_directories(dir);
    return dir.string();
  }();
  return root;
}

std::string seed_dir() {
  static std::string dir = [] {
    std::string d = scratch_root() + "/seed";
    fs::create_directories(d);
    write_file(d + "/schema.txt",
               "table sensors(sid:INTEGER, label:TEXT)\n"
               "pk sensors(sid)\n"
               "table readings(id:INTEGER, sensor:INTEGER, reading:DECIMAL, taken:DATE, "
               "tag:TEXT NULL)\n"
               "pk readings(id)\n"
               "fk readings.sensor -> sensors.sid\n");

    std::string sensors = "sid,label\n";
    for (std::uint64_t i = 0; i < kSensorRows; ++i) {
      sensors += std::to_string(100 + i) + ",SENSOR-" + std::to_string(i) + "\n";
    }
    write_file(d + "/sensors.csv", sensors);

    std::string readings = "id,sensor,reading,taken,tag\n";
    std::int64_t epoch = vig::days_from_civil(2000, 1, 1);
    for (std::uint64_t i = 0; i < kReadingRows; ++i) {
      readings += std::to_string(i + 1) + ",";
      readings += std::to_string(100 + i % kSensorRows) + ",";
      readings += std::to_string(50 + i) + "." + std::to_string(i % 10) + ",";
      readings += vig::render_date(epoch + static_cast<std::int64_t>(i % 900)) + ",";
      if (i % 5 != 0) readings += "TAG-" + std::to_string(i);
      readings += "\n";
    }
    write_file(d + "/readings.csv", readings);
    return d;
  }();
  return dir;
}

vig::RunConfig base_config() {
  vig::RunConfig config;
  config.schema_path = seed_dir() + "/schema.txt";
  config.data_dir = seed_dir();
  config.seed = 7;
  return config;
}

// Planning only: seed scan, interval layout, no row generation.
void BM_Plan(benchmark::State& state) {
  vig::RunConfig config = base_config();
  config.scale = vig::Rational::of(64, 1);
  config.report_only = true;
  std::uint64_t runs = 0;
  for (auto _ : state) {
    std::string out = scratch_root() + "/plan-" + std::to_string(runs++);
    config.out_dir = out;
    benchmark::DoNotOptimize(vig::run_pipeline(config));
    fs::remove_all(out);
  }
}
BENCHMARK(BM_Plan)->Unit(benchmark::kMillisecond);

// Full run; items/s is output rows per wall second.
void BM_Export(benchmark::State& state) {
  vig::RunConfig config = base_config();
  config.scale = vig::Rational::of(state.range(0), 1);
  config.parallelism = static_cast<unsigned>(state.range(1));
  std::uint64_t rows = (kReadingRows + kSensorRows) * static_cast<std::uint64_t>(state.range(0));
  std::uint64_t runs = 0;
  for (auto _ : state) {
    std::string out = scratch_root() + "/export-" + std::to_string(runs++);
    config.out_dir = out;
    vig::run_pipeline(config);
    fs::remove_all(out);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(rows * state.iterations()));
}
BENCHMARK(BM_Export)
    ->Args({8, 1})
    ->Args({64, 1})
    ->Args({64, 4})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

}  // namespace

int main(int argc, char** argv) {
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  std::error_code ec;
  fs::remove_all(scratch_root(), ec);
  return 0;
}
