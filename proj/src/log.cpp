#include "equiroute/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <string_view>

namespace equiroute {

namespace {

std::mutex g_mutex;

LogLevel parse_level(const char* raw) {
  if (raw == nullptr) {
    return LogLevel::warn;
  }
  const std::string_view v(raw);
  if (v == "off" || v == "0") return LogLevel::off;
  if (v == "error" || v == "1") return LogLevel::error;
  if (v == "warn" || v == "2") return LogLevel::warn;
  if (v == "info" || v == "3") return LogLevel::info;
  if (v == "debug" || v == "4") return LogLevel::debug;
  return LogLevel::warn;
}

LogLevel& current_level() {
  static LogLevel level = parse_level(std::getenv("EQUIROUTE_LOG"));
  return level;
}

const char* level_tag(LogLevel level) {
  switch (level) {
    case LogLevel::error:
      return "error";
    case LogLevel::warn:
      return "warn";
    case LogLevel::info:
      return "info";
    case LogLevel::debug:
      return "debug";
    default:
      return "log";
  }
}

}  // namespace

LogLevel log_level() { return current_level(); }

void set_log_level(LogLevel level) { current_level() = level; }

void log_message(LogLevel level, const std::string& text) {
  if (level == LogLevel::off || static_cast<int>(level) > static_cast<int>(current_level())) {
    return;
  }
  std::lock_guard<std::mutex> lock(g_mutex);
  std::fprintf(stderr, "[%s] %s\n", level_tag(level), text.c_str());
}

}  // namespace equiroute
