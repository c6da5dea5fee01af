#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace eduassist {

enum class Severity { Warning, Error };

// A located message produced by one of the text front-ends. Line and column
// are 1-based; column 0 means "whole line".
struct Diagnostic {
    Severity severity = Severity::Error;
    std::size_t line = 0;
    std::size_t column = 0;
    std::string code;
    std::string message;

    bool is_error() const { return severity == Severity::Error; }

    friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

inline bool has_errors(const std::vector<Diagnostic>& diags)
{
    for (const auto& d : diags)
        if (d.is_error())
            return true;
    return false;
}

std::string to_string(Severity s);

// "3:7: error: expected '}' [syntax_error]"
std::string format_diagnostic(const Diagnostic& d);

} // namespace eduassist
