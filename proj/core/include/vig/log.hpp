#pragma once

#include <sstream>
#include <string>

namespace vig {

enum class LogLevel { Off = 0, Error = 1, Warn = 2, Info = 3, Debug = 4 };

// Level comes from the VIG_LOG env var (off|error|warn|info|debug); the
// default is warn.  Read once on first use.
LogLevel log_level();
bool log_enabled(LogLevel level);
void log_write(LogLevel level, const std::string& message);

namespace detail {

class LogLine {
 public:
  explicit LogLine(LogLevel level) : level_(level) {}
  ~LogLine() { log_write(level_, out_.str()); }
  template <typename T>
  LogLine& operator<<(const T& v) {
    out_ << v;
    return *this;
  }

 private:
  LogLevel level_;
  std::ostringstream out_;
};

}  // namespace detail
}  // namespace vig

#define VIG_LOG_AT(level)            \
  if (!::vig::log_enabled(level)) {  \
  } else                             \
    ::vig::detail::LogLine(level)

#define VIG_ERROR() VIG_LOG_AT(::vig::LogLevel::Error)
#define VIG_WARN()  VIG_LOG_AT(::vig::LogLevel::Warn)
#define VIG_INFO()  VIG_LOG_AT(::vig::LogLevel::Info)
#define VIG_DEBUG() VIG_LOG_AT(::vig::LogLevel::Debug)
