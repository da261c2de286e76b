#pragma once

#include <string>
#include <string_view>

namespace utamp {

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

/// Level from the UTAMP_LOG environment variable (error, warn, info, debug),
/// read once. Defaults to warn.
LogLevel log_level();
void set_log_level(LogLevel level);

void log_message(LogLevel level, std::string_view msg);
inline void log_warn(std::string_view msg) { log_message(LogLevel::warn, msg); }
inline void log_info(std::string_view msg) { log_message(LogLevel::info, msg); }
inline void log_debug(std::string_view msg) { log_message(LogLevel::debug, msg); }

}  // namespace utamp
