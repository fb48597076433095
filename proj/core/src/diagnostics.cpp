#include "hubflow/diagnostics.hpp"

namespace hubflow {

bool has_fatal(const Diagnostics& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::Fatal) return true;
    return false;
}

const char* to_string(Severity s) {
    switch (s) {
        case Severity::Info: return "info";
        case Severity::Warning: return "warning";
        case Severity::Fatal: return "fatal";
    }
    return "?";
}

std::string format_diagnostic(const Diagnostic& d) {
    std::string out = to_string(d.severity);
    out += " ";
    out += d.code;
    out += " [";
    out += d.subject;
    out += "] ";
    out += d.message;
    return out;
}

}  // namespace hubflow
