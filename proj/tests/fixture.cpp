#include "fixture.hpp"

#include <atomic>
#include <fstream>

#include <unistd.h>

#include "vig/datatype.hpp"
#include "vig/error.hpp"

namespace fixture {
namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw vig::IoError("fixture: cannot write '" + path + "'");
  out << content;
}

}  // namespace

std::string schema_text() {
  return R"(# NPD-style wellbore fixture
table development_wellbores(id:INTEGER, name:TEXT, year:INTEGER, fid:INTEGER, drilled:DATE)
pk development_wellbores(id)
table exploration_wellbores(id:INTEGER, name:TEXT, year:INTEGER, state:TEXT NULL)
pk exploration_wellbores(id)
table fields(fid:INTEGER, name:TEXT, office:INTEGER)
pk fields(fid)
table field_offices(oid:INTEGER, city:TEXT, active:BOOLEAN)
pk field_offices(oid)
table wellbore_cores(wid:INTEGER, core_no:INTEGER, depth:DECIMAL, note:TEXT NULL)
pk wellbore_cores(wid, core_no)
fk development_wellbores.fid -> fields.fid
fk fields.office -> field_offices.oid
fk wellbore_cores.wid -> development_wellbores.id
)";
}

std::string mappings_text() {
  return R"(# Wellbore mappings in the style of an NPD OBDA deployment
DevelopmentWellbore(w(id)) <- development_wellbores(id, name, year, fid, drilled)
ExplorationWellbore(w(id)) <- exploration_wellbores(id, name, year, state)
SuspendedWellbore(w(id)) <- exploration_wellbores(id, name, year, state), state='suspended'
Field(f(fid)) <- fields(fid, name, office)
WellboreName(u(name)) <- development_wellbores(id, name, year, fid, drilled)
WellboreName(u(name)) <- exploration_wellbores(id, name, year, state)
developmentWellboreForField(w(id), f(fid)) <- development_wellbores(id, name, year, fid, drilled), fields(fid, fname, foffice)
)";
}

void write_seed(const std::string& dir) {
  // development_wellbores: the first kSharedNames names also occur in
  // exploration_wellbores; drilled dates are 7 days apart modulo a decade.
  {
    std::string csv = "id,name,year,fid,drilled\n";
    std::int64_t epoch = vig::days_from_civil(1985, 1, 1);
    for (std::uint64_t i = 0; i < kDevRows; ++i) {
      csv += std::to_string(5000 + i) + ",";
      csv += (i < kSharedNames ? "WLB-SHARED-" : "WLB-D-") + std::to_string(i) + ",";
      csv += std::to_string(1980 + i % 40) + ",";
      csv += std::to_string(1000 + i % 320) + ",";
      csv += vig::render_date(epoch + static_cast<std::int64_t>(i * 7 % 3650)) + "\n";
    }
    write_file(dir + "/development_wellbores.csv", csv);
  }

  // exploration_wellbores: state is NULL on two of every eight rows and
  // cycles over four codes on the remaining ones, 'suspended' first.
  {
    static const char* kStates[4] = {"suspended", "active", "completed", "plugged"};
    std::string csv = "id,name,year,state\n";
    std::uint64_t non_null = 0;
    for (std::uint64_t i = 0; i < kExpRows; ++i) {
      csv += std::to_string(9000 + i) + ",";
      csv += (i < kSharedNames ? "WLB-SHARED-" : "WLB-E-") + std::to_string(i) + ",";
      csv += std::to_string(1975 + i % 50) + ",";
      if (i % 8 == 3 || i % 8 == 7) {
        csv += "\n";
      } else {
        csv += std::string(kStates[non_null++ % 4]) + "\n";
      }
    }
    write_file(dir + "/exploration_wellbores.csv", csv);
  }

  {
    std::string csv = "fid,name,office\n";
    for (std::uint64_t i = 0; i < kFieldRows; ++i) {
      csv += std::to_string(1000 + i) + ",FLD-" + std::to_string(i) + "," +
             std::to_string(2000 + i % 120) + "\n";
    }
    write_file(dir + "/fields.csv", csv);
  }

  {
    std::string csv = "oid,city,active\n";
    for (std::uint64_t i = 0; i < kOfficeRows; ++i) {
      csv += std::to_string(2000 + i) + ",CITY-" + std::to_string(i) + "," +
             (i % 2 == 0 ? "true" : "false") + "\n";
    }
    write_file(dir + "/field_offices.csv", csv);
  }

  // wellbore_cores: four cores per wellbore for the first 350 development
  // wellbores; depth values collide across neighbouring wellbores, giving a
  // distinct count below the row count.
  {
    std::string csv = "wid,core_no,depth,note\n";
    for (std::uint64_t w = 0; w < 350; ++w) {
      for (std::uint64_t c = 1; c <= 4; ++c) {
        csv += std::to_string(5000 + w) + "," + std::to_string(c) + ",";
        csv += std::to_string(1200 + 3 * w + c) + ".5,";
        if ((w + c) % 5 == 0) {
          csv += "\n";
        } else {
          csv += "CORE-" + std::to_string(w) + "-" + std::to_string(c) + "\n";
        }
      }
    }
    write_file(dir + "/wellbore_cores.csv", csv);
  }
}

TempDir::TempDir(const std::string& prefix, const std::string& base) {
  static std::atomic<unsigned> counter{0};
  namespace fs = std::filesystem;
  fs::path root = base.empty() ? fs::temp_directory_path() : fs::path(base);
  fs::path dir = root / (prefix + "-" + std::to_string(::getpid()) + "-" +
                         std::to_string(counter.fetch_add(1)));
  fs::create_directories(dir);
  path_ = dir.string();
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace fixture
