#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

// NPD-style seed instance used across the test suite: five tables with an
// FK chain, a weakly-identified two-column primary key, a nullable
// fixed-domain state column, disjoint id columns, and overlapping name
// columns — every planning feature has something to chew on.
namespace fixture {

inline constexpr std::uint64_t kDevRows = 1200;     // development_wellbores
inline constexpr std::uint64_t kExpRows = 1500;     // exploration_wellbores
inline constexpr std::uint64_t kFieldRows = 400;    // fields
inline constexpr std::uint64_t kOfficeRows = 120;   // field_offices
inline constexpr std::uint64_t kCoreRows = 1400;    // wellbore_cores
inline constexpr std::uint64_t kSharedNames = 15;   // |names(dev) ∩ names(exp)|
inline constexpr std::uint64_t kExpStateNulls = 375;
inline constexpr std::uint64_t kCoreNoteNulls = 280;
inline constexpr std::uint64_t kCoreDepthDistinct = 1051;

std::string schema_text();
std::string mappings_text();

// Writes <table>.csv seed files into dir (which must exist).
void write_seed(const std::string& dir);

// Unique scratch directory, removed on destruction.  Lives under the
// system temp directory unless a base is given (large outputs belong on
// real disk rather than a possibly RAM-backed /tmp).
class TempDir {
 public:
  explicit TempDir(const std::string& prefix, const std::string& base = "");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace fixture
