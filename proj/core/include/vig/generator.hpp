#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vig/intervals.hpp"
#include "vig/prng.hpp"
#include "vig/schema.hpp"
#include "vig/stats.hpp"

namespace vig {

// Maps a 1-based index into the concatenated address space of an ordered
// interval list: index 1 is the first interval's lo, and indexes continue
// across gaps.  index must not exceed the total width.
std::int64_t address_in_intervals(const std::vector<Interval>& intervals, std::uint64_t index);

// Streams the values of one output column in row order.  Construction fixes
// the permutation, the phases, and the encoding; emit_chunk() must then be
// called with consecutive row ranges.  All state advances deterministically,
// so equal (plan, seed) yield byte-identical output.
class ColumnEmitter {
 public:
  ColumnEmitter(const Schema& schema, const InstanceStats& stats, const IntervalPlan& plan,
                ColumnRef ref, std::uint64_t seed);

  // Appends the CSV-escaped fields for rows [row_begin, row_end) to `data`
  // and records the end offset of each field in `ends`.
  void emit_chunk(std::uint64_t row_begin, std::uint64_t row_end, std::string& data,
                  std::vector<std::uint64_t>& ends);

  // True when the row carries NULL; such rows do not advance the value cycle.
  bool null_at(std::uint64_t row) const;

  // The address the value cycle visits at the given non-null ordinal, and its
  // rendered form.  Exposed for tests; emit_chunk() is the fast path.
  std::int64_t address_at(std::uint64_t ordinal) const;
  std::string encode(std::int64_t address) const;

  std::uint64_t domain_size() const { return n_; }

 private:
  std::int64_t interval_value(std::uint64_t index) const;

  Datatype type_;
  bool fixed_domain_ = false;
  std::vector<Interval> intervals_;
  std::vector<std::uint64_t> prefix_;  // width of intervals before index i
  std::uint64_t n_ = 0;                // total planned width
  std::uint64_t rows_ = 0;
  std::uint64_t nulls_ = 0;
  std::uint64_t null_phase_ = 0;
  PermutationGenerator gen_;
  std::uint64_t value_phase_ = 0;
  PermutationCursor cursor_;
  std::uint64_t next_row_ = 0;

  std::string text_prefix_;                 // TEXT encoding
  unsigned decimal_scale_ = 0;              // DECIMAL encoding, component-wide
  std::vector<std::string> domain_values_;  // fixed-domain encoding
  std::int64_t domain_base_ = 1;
  std::string display_;
};

struct ExportSummary {
  struct TableSummary {
    std::string name;
    std::uint64_t rows = 0;
    std::uint64_t bytes = 0;
  };
  std::vector<TableSummary> tables;
  double elapsed_seconds = 0.0;
};

// Writes one CSV per table into out_dir.  Files appear atomically (written to
// a temporary name, then renamed); a failed table leaves no partial file.
ExportSummary export_instance(const Schema& schema, const InstanceStats& stats,
                              const IntervalPlan& plan, const std::string& out_dir,
                              std::uint64_t seed, unsigned parallelism);

}  // namespace vig
