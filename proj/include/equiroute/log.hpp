#pragma once

#include <string>

namespace equiroute {

enum class LogLevel { off = 0, error = 1, warn = 2, info = 3, debug = 4 };

// Verbosity comes from the EQUIROUTE_LOG environment variable ("off",
// "error", "warn", "info", "debug", or 0-4); warn when unset.
LogLevel log_level();
void set_log_level(LogLevel level);

// Writes to stderr when `level` is within the configured verbosity.
void log_message(LogLevel level, const std::string& text);

}  // namespace equiroute
