#pragma once

#include "utamp/executor.hpp"

#include <string>

namespace utamp {

/// JSON report: {"format": "utamp-report", "version": 1, "success", "error",
/// "collisions", "missing_goals", "max_attachment_error", "final_state"}.
std::string report_to_json(const ExecutionReport& report);

/// JSON trace: {"format": "utamp-trace", "version": 1, "steps": [...]} with
/// one entry per command; poses are [x, y, z, roll, pitch, yaw].
std::string trace_to_json(const ExecutionReport& report);

}  // namespace utamp
