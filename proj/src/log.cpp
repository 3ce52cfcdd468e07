#include "alertswarm/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace alertswarm {

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("ALERT_SWARM_LOG");
        if (env == nullptr) return LogLevel::Info;
        if (std::strcmp(env, "error") == 0) return LogLevel::Error;
        if (std::strcmp(env, "debug") == 0) return LogLevel::Debug;
        return LogLevel::Info;
    }();
    return level;
}

namespace {
void emit(const char* tag, const std::string& msg) {
    std::fprintf(stderr, "[%s] %s\n", tag, msg.c_str());
}
}  // namespace

void log_error(const std::string& msg) { emit("error", msg); }

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::Info) emit("info", msg);
}

void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::Debug) emit("debug", msg);
}

}  // namespace alertswarm
