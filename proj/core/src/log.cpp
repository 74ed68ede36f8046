#include "vig/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>

namespace vig {
namespace {

LogLevel parse_level(const char* text) {
  if (text == nullptr) return LogLevel::Warn;
  if (std::strcmp(text, "off") == 0)   return LogLevel::Off;
  if (std::strcmp(text, "error") == 0) return LogLevel::Error;
  if (std::strcmp(text, "warn") == 0)  return LogLevel::Warn;
  if (std::strcmp(text, "info") == 0)  return LogLevel::Info;
  if (std::strcmp(text, "debug") == 0) return LogLevel::Debug;
  return LogLevel::Warn;
}

const char* level_tag(LogLevel level) {
  switch (level) {
    case LogLevel::Error: return "error";
    case LogLevel::Warn:  return "warn";
    case LogLevel::Info:  return "info";
    case LogLevel::Debug: return "debug";
    default:              return "?";
  }
}

std::mutex g_log_mutex;

}  // namespace

LogLevel log_level() {
  static LogLevel level = parse_level(std::getenv("VIG_LOG"));
  return level;
}

bool log_enabled(LogLevel level) { return level <= log_level(); }

void log_write(LogLevel level, const std::string& message) {
  std::lock_guard<std::mutex> lock(g_log_mutex);
  std::fprintf(stderr, "[vig %s] %s\n", level_tag(level), message.c_str());
}

}  // namespace vig
