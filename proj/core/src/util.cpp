#include "hubflow/util.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace hubflow {

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_fixed(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

LogLevel log_level() {
    static LogLevel level = [] {
        const char* env = std::getenv("HUBFLOW_LOG");
        if (!env) return LogLevel::Error;
        if (std::strcmp(env, "debug") == 0) return LogLevel::Debug;
        if (std::strcmp(env, "info") == 0) return LogLevel::Info;
        return LogLevel::Error;
    }();
    return level;
}

void log_error(const std::string& msg) {
    std::fprintf(stderr, "[error] %s\n", msg.c_str());
}

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::Info) std::fprintf(stderr, "[info] %s\n", msg.c_str());
}

void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::Debug) std::fprintf(stderr, "[debug] %s\n", msg.c_str());
}

}  // namespace hubflow
