#include "vig/generator.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <system_error>

#include "vig/csv.hpp"
#include "vig/datatype.hpp"
#include "vig/detail/parallel.hpp"
#include "vig/detail/strutil.hpp"
#include "vig/error.hpp"
#include "vig/log.hpp"

namespace vig {
namespace {

constexpr std::uint64_t kChunkRows = 65536;

std::uint64_t phase_hash(std::string_view kind, const std::string& display, std::uint64_t seed) {
  std::uint64_t h = detail::fnv1a64(kind);
  h = detail::fnv1a64(display, h);
  return detail::fnv1a64(std::to_string(seed), h);
}

}  // namespace

std::int64_t address_in_intervals(const std::vector<Interval>& intervals, std::uint64_t index) {
  std::uint64_t skipped = 0;
  for (const Interval& iv : intervals) {
    if (index <= skipped + iv.width()) {
      return iv.lo + static_cast<std::int64_t>(index - skipped - 1);
    }
    skipped += iv.width();
  }
  throw Error(ErrorKind::Internal, "interval address index " + std::to_string(index) +
                                       " exceeds the total width " + std::to_string(skipped));
}

ColumnEmitter::ColumnEmitter(const Schema& schema, const InstanceStats& stats,
                             const IntervalPlan& plan, ColumnRef ref, std::uint64_t seed) {
  const Column& column = schema.column(ref);
  const ScaleTargets::ColumnTarget& target = plan.targets.column(ref);
  type_ = column.type;
  fixed_domain_ = target.fixed_domain;
  intervals_ = plan.column_intervals(ref);
  prefix_.reserve(intervals_.size());
  std::uint64_t acc = 0;
  for (const Interval& iv : intervals_) {
    prefix_.push_back(acc);
    acc += iv.width();
  }
  n_ = acc;
  rows_ = plan.targets.tables[ref.table].rows_out;
  nulls_ = target.null_count_out;
  display_ = schema.column_display(ref);

  if (n_ > 0) {
    gen_ = PermutationGenerator::make(n_);
    value_phase_ = phase_hash("value", display_, seed) % (gen_.p - 1);
    cursor_ = PermutationCursor(gen_, value_phase_);
  }
  if (rows_ > 0) null_phase_ = phase_hash("null", display_, seed) % rows_;

  if (fixed_domain_) {
    domain_values_ = stats.column(ref).domain_values;
    domain_base_ = intervals_.empty() ? 1 : intervals_.front().lo;
    if (domain_values_.size() != n_) {
      throw Error(ErrorKind::Internal, "fixed domain of '" + display_ + "' has " +
                                           std::to_string(domain_values_.size()) +
                                           " values but the plan allots " + std::to_string(n_));
    }
  } else if (type_ == Datatype::Text) {
    // Joinable columns must spell values identically, so the whole join
    // component uses its canonical column's name as the prefix.
    ColumnRef canon = plan.component_of(ref)->columns.front();
    text_prefix_ =
        schema.tables[canon.table].name + "_" + schema.column(canon).name + "_";
  } else if (type_ == Datatype::Decimal) {
    for (ColumnRef other : plan.component_of(ref)->columns) {
      if (schema.column(other).type == Datatype::Decimal) {
        decimal_scale_ = std::max(decimal_scale_, stats.column(other).decimal_scale);
      }
    }
  }
}

bool ColumnEmitter::null_at(std::uint64_t row) const {
  if (nulls_ == 0) return false;
  std::uint64_t rho = (row + null_phase_) % rows_;
  // Bresenham spacing: exactly nulls_ rows per rows_ fire, spaced evenly.
  unsigned __int128 before = static_cast<unsigned __int128>(rho) * nulls_ / rows_;
  unsigned __int128 after = (static_cast<unsigned __int128>(rho) + 1) * nulls_ / rows_;
  return after > before;
}

std::int64_t ColumnEmitter::interval_value(std::uint64_t index) const {
  // Largest i with prefix_[i] < index.
  auto it = std::upper_bound(prefix_.begin(), prefix_.end(), index - 1);
  std::size_t i = static_cast<std::size_t>(it - prefix_.begin()) - 1;
  return intervals_[i].lo + static_cast<std::int64_t>(index - prefix_[i] - 1);
}

std::int64_t ColumnEmitter::address_at(std::uint64_t ordinal) const {
  if (n_ == 0) {
    throw Error(ErrorKind::Internal, "column '" + display_ + "' has no value space");
  }
  PermutationCursor cursor(gen_, value_phase_);
  std::uint64_t value = 0;
  for (std::uint64_t i = 0; i <= ordinal; ++i) value = cursor.next();
  return interval_value(value);
}

std::string ColumnEmitter::encode(std::int64_t address) const {
  if (fixed_domain_) {
    std::int64_t index = address - domain_base_;
    if (index < 0 || index >= static_cast<std::int64_t>(domain_values_.size())) {
      throw Error(ErrorKind::Internal,
                  "address " + std::to_string(address) + " outside the fixed domain of '" +
                      display_ + "'");
    }
    return domain_values_[static_cast<std::size_t>(index)];
  }
  switch (type_) {
    case Datatype::Integer:
      return std::to_string(address);
    case Datatype::Text:
      return text_prefix_ + std::to_string(address);
    case Datatype::Date:
      return render_date(address);
    case Datatype::Decimal: {
      std::string text = render_decimal(address, decimal_scale_);
      if (decimal_scale_ > 0) {
        std::size_t last = text.find_last_not_of('0');
        if (text[last] == '.') --last;
        text.erase(last + 1);
      }
      return text;
    }
    case Datatype::Boolean:
      break;
  }
  throw Error(ErrorKind::Internal,
              "BOOLEAN column '" + display_ + "' reached non-fixed-domain encoding");
}

void ColumnEmitter::emit_chunk(std::uint64_t row_begin, std::uint64_t row_end, std::string& data,
                               std::vector<std::uint64_t>& ends) {
  if (row_begin != next_row_) {
    throw Error(ErrorKind::Internal, "non-consecutive chunk for '" + display_ + "'");
  }
  for (std::uint64_t row = row_begin; row < row_end; ++row) {
    if (!null_at(row)) {
      if (n_ == 0) {
        throw Error(ErrorKind::Internal,
                    "column '" + display_ + "' has no values for a non-null row");
      }
      csv_append_field(data, encode(interval_value(cursor_.next())));
    }
    ends.push_back(data.size());
  }
  next_row_ = row_end;
}

ExportSummary export_instance(const Schema& schema, const InstanceStats& stats,
                              const IntervalPlan& plan, const std::string& out_dir,
                              std::uint64_t seed, unsigned parallelism) {
  namespace fs = std::filesystem;
  auto started = std::chrono::steady_clock::now();
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());
  }

  ExportSummary summary;
  for (std::uint32_t t = 0; t < schema.tables.size(); ++t) {
    const Table& table = schema.tables[t];
    std::uint64_t rows = plan.targets.tables[t].rows_out;
    fs::path final_path = fs::path(out_dir) / (table.name + ".csv");
    fs::path tmp_path = fs::path(out_dir) / (table.name + ".csv.tmp");

    std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp_path.string() + "' for writing");
    std::uint64_t bytes = 0;
    try {
      std::string header;
      for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) header += ',';
        csv_append_field(header, table.columns[c].name);
      }
      header += '\n';
      out.write(header.data(), static_cast<std::streamsize>(header.size()));
      bytes += header.size();

      std::size_t ncols = table.columns.size();
      std::vector<ColumnEmitter> emitters;
      emitters.reserve(ncols);
      for (std::uint32_t c = 0; c < ncols; ++c) {
        emitters.emplace_back(schema, stats, plan, ColumnRef{t, c}, seed);
      }

      // Columns fill their chunk buffers in parallel; the row-major zip is
      // pure concatenation, so output bytes never depend on the thread count.
      std::vector<std::string> data(ncols);
      std::vector<std::vector<std::uint64_t>> ends(ncols);
      std::string zipped;
      for (std::uint64_t chunk = 0; chunk < rows; chunk += kChunkRows) {
        std::uint64_t chunk_end = std::min(rows, chunk + kChunkRows);
        detail::parallel_for(ncols, parallelism, [&](std::size_t begin, std::size_t end) {
          for (std::size_t c = begin; c < end; ++c) {
            data[c].clear();
            ends[c].clear();
            emitters[c].emit_chunk(chunk, chunk_end, data[c], ends[c]);
          }
        });
        zipped.clear();
        for (std::uint64_t r = 0; r < chunk_end - chunk; ++r) {
          for (std::size_t c = 0; c < ncols; ++c) {
            if (c > 0) zipped += ',';
            std::uint64_t lo = r == 0 ? 0 : ends[c][r - 1];
            zipped.append(data[c], lo, ends[c][r] - lo);
          }
          zipped += '\n';
        }
        out.write(zipped.data(), static_cast<std::streamsize>(zipped.size()));
        bytes += zipped.size();
      }
      out.flush();
      if (!out) throw IoError("write failed for '" + tmp_path.string() + "'");
      out.close();
      fs::rename(tmp_path, final_path, ec);
      if (ec) {
        throw IoError("cannot move '" + tmp_path.string() + "' into place: " + ec.message());
      }
    } catch (...) {
      out.close();
      fs::remove(tmp_path, ec);
      throw;
    }
    VIG_INFO() << "wrote " << final_path.string() << " (" << rows << " rows, " << bytes
               << " bytes)";
    summary.tables.push_back({table.name, rows, bytes});
  }
  summary.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return summary;
}

}  // namespace vig
