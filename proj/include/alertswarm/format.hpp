#pragma once

#include <charconv>
#include <string>

namespace alertswarm {

/// Shortest round-trip decimal form, locale-free. Keeps emitted files
/// byte-stable across runs and platforms.
inline std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace alertswarm
