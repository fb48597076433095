#ifndef HUBFLOW_DIAGNOSTICS_HPP
#define HUBFLOW_DIAGNOSTICS_HPP

#include <string>
#include <vector>

namespace hubflow {

enum class Severity { Info, Warning, Fatal };

/// Machine-readable validation finding. `code` is a stable identifier
/// (e.g. FRACTION_SUM), `subject` names the offending element.
struct Diagnostic {
    std::string code;
    Severity severity = Severity::Info;
    std::string subject;
    std::string message;
};

using Diagnostics = std::vector<Diagnostic>;

bool has_fatal(const Diagnostics& diags);
const char* to_string(Severity s);
std::string format_diagnostic(const Diagnostic& d);

}  // namespace hubflow

#endif
