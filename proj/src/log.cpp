#include "utamp/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>

namespace utamp {

namespace {

LogLevel from_env() {
  const char* v = std::getenv("UTAMP_LOG");
  if (!v) return LogLevel::warn;
  const std::string_view s(v);
  if (s == "error") return LogLevel::error;
  if (s == "info") return LogLevel::info;
  if (s == "debug") return LogLevel::debug;
  return LogLevel::warn;
}

std::atomic<int>& level_storage() {
  static std::atomic<int> level{static_cast<int>(from_env())};
  return level;
}

constexpr const char* kNames[] = {"error", "warn", "info", "debug"};

}  // namespace

LogLevel log_level() { return static_cast<LogLevel>(level_storage().load()); }
void set_log_level(LogLevel level) { level_storage().store(static_cast<int>(level)); }

void log_message(LogLevel level, std::string_view msg) {
  if (static_cast<int>(level) > level_storage().load()) return;
  static std::mutex mu;
  std::lock_guard lock(mu);
  std::cerr << "[utamp " << kNames[static_cast<int>(level)] << "] " << msg << '\n';
}

}  // namespace utamp
