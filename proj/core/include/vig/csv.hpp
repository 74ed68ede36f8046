#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace vig {

// RFC 4180 reader over a whole file held in memory (instances at planning
// and validation scale are small; bulk generation only ever writes).
// NULL convention: an empty field or the unquoted literal \N reads as NULL.
class CsvReader {
 public:
  explicit CsvReader(std::string path);  // throws IoError when unreadable

  // Parses the next record; returns false at end of input.  fields and
  // nulls are resized to the record arity; nulls[i] marks a NULL field.
  bool next(std::vector<std::string>& fields, std::vector<bool>& nulls);

  // 1-based line number where the most recent record started.
  std::size_t record_line() const { return record_line_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::string buffer_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
};

// Appends value to out with RFC 4180 quoting when the value requires it.
void csv_append_field(std::string& out, std::string_view value);

}  // namespace vig
