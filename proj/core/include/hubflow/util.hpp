#ifndef HUBFLOW_UTIL_HPP
#define HUBFLOW_UTIL_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace hubflow {

/// FNV-1a 64-bit content hash; stable across platforms and runs.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

/// Shortest decimal form that parses back to the same double
/// (std::to_chars); locale-independent.
std::string format_double(double v);

/// Fixed-precision form for aligned tables.
std::string format_fixed(double v, int precision);

enum class LogLevel { Error = 0, Info = 1, Debug = 2 };

/// Level from HUBFLOW_LOG in {error, info, debug}; defaults to error.
LogLevel log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);
void log_error(const std::string& msg);

}  // namespace hubflow

#endif
