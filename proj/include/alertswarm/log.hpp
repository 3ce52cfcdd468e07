#pragma once

#include <string>

namespace alertswarm {

/// Verbosity is selected once per process via ALERT_SWARM_LOG
/// (error | info | debug); default is info. Output goes to stderr.
enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

LogLevel log_level();

void log_error(const std::string& msg);
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace alertswarm
