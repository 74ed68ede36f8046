#include "vig/csv.hpp"

#include <fstream>
#include <sstream>

#include "vig/error.hpp"

namespace vig {

CsvReader::CsvReader(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path_ + "'");
  std::ostringstream tmp;
  tmp << in.rdbuf();
  buffer_ = std::move(tmp).str();
}

bool CsvReader::next(std::vector<std::string>& fields, std::vector<bool>& nulls) {
  fields.clear();
  nulls.clear();
  if (pos_ >= buffer_.size()) return false;
  record_line_ = line_;

  bool record_done = false;
  while (!record_done) {
    std::string field;
    bool quoted = false;
    if (pos_ < buffer_.size() && buffer_[pos_] == '"') {
      quoted = true;
      ++pos_;
      while (true) {
        if (pos_ >= buffer_.size()) {
          throw ParseError(path_ + " line " + std::to_string(record_line_) +
                           ": unterminated quoted field");
        }
        char c = buffer_[pos_++];
        if (c == '"') {
          if (pos_ < buffer_.size() && buffer_[pos_] == '"') {
            field.push_back('"');
            ++pos_;
            continue;
          }
          break;
        }
        if (c == '\n') ++line_;
        field.push_back(c);
      }
      if (pos_ < buffer_.size() && buffer_[pos_] != ',' && buffer_[pos_] != '\n' &&
          buffer_[pos_] != '\r') {
        throw ParseError(path_ + " line " + std::to_string(line_) +
                         ": unexpected character after closing quote");
      }
    } else {
      while (pos_ < buffer_.size()) {
        char c = buffer_[pos_];
        if (c == ',' || c == '\n' || c == '\r') break;
        field.push_back(c);
        ++pos_;
      }
    }

    if (pos_ >= buffer_.size()) {
      record_done = true;
    } else if (buffer_[pos_] == ',') {
      ++pos_;
    } else {  // \r\n or \n terminates the record
      if (buffer_[pos_] == '\r') ++pos_;
      if (pos_ < buffer_.size() && buffer_[pos_] == '\n') {
        ++pos_;
        ++line_;
      }
      record_done = true;
    }

    bool is_null = field.empty() || (!quoted && field == "\\N");
    fields.push_back(std::move(field));
    nulls.push_back(is_null);
  }
  return true;
}

void csv_append_field(std::string& out, std::string_view value) {
  bool needs_quotes = false;
  for (char c : value) {
    if (c == ',' || c == '"' || c == '\n' || c == '\r') {
      needs_quotes = true;
      break;
    }
  }
  if (!needs_quotes) {
    out.append(value);
    return;
  }
  out.push_back('"');
  for (char c : value) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
}

}  // namespace vig
