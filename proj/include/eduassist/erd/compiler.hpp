#pragma once

#include "eduassist/diagnostic.hpp"
#include "eduassist/erd/model.hpp"
#include "eduassist/erd/sql.hpp"

#include <stdexcept>
#include <string_view>
#include <vector>

namespace eduassist::erd {

enum class CompileStage { Parse, Validate, Order };

std::string to_string(CompileStage s);

// Raised by compile_erd when a stage reports errors. diagnostics() holds
// everything that stage produced, warnings included.
class CompileError : public std::runtime_error {
public:
    CompileError(CompileStage stage, std::vector<Diagnostic> diagnostics);

    CompileStage stage() const noexcept { return stage_; }
    const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

    // Code of the first error diagnostic ("syntax_error", "cyclic_dependency", ...).
    const std::string& kind() const;

private:
    CompileStage stage_;
    std::vector<Diagnostic> diagnostics_;
};

struct CompileOutput {
    ErdModel model;
    SqlScript script;
    std::vector<Diagnostic> warnings;
};

// parse -> validate -> order -> emit. The first stage with errors aborts.
CompileOutput compile_erd(std::string_view source);

// parse + validate only; never throws.
std::vector<Diagnostic> check_erd(std::string_view source);

} // namespace eduassist::erd
