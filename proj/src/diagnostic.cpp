#include "eduassist/diagnostic.hpp"

namespace eduassist {

std::string to_string(Severity s)
{
    return s == Severity::Error ? "error" : "warning";
}

std::string format_diagnostic(const Diagnostic& d)
{
    std::string out;
    if (d.line > 0) {
        out += std::to_string(d.line);
        if (d.column > 0)
            out += ":" + std::to_string(d.column);
        out += ": ";
    }
    out += to_string(d.severity) + ": " + d.message;
    if (!d.code.empty())
        out += " [" + d.code + "]";
    return out;
}

} // namespace eduassist
