#include "eduassist/erd/compiler.hpp"

#include "eduassist/erd/order.hpp"
#include "eduassist/erd/parser.hpp"
#include "eduassist/erd/validate.hpp"

namespace eduassist::erd {

namespace {

std::string summarize(CompileStage stage, const std::vector<Diagnostic>& diags)
{
    std::size_t errors = 0;
    const Diagnostic* first = nullptr;
    for (const auto& d : diags) {
        if (!d.is_error())
            continue;
        if (!first)
            first = &d;
        ++errors;
    }
    std::string s = to_string(stage) + " failed with " + std::to_string(errors) + " error(s)";
    if (first)
        s += ": " + format_diagnostic(*first);
    return s;
}

} // namespace

std::string to_string(CompileStage s)
{
    switch (s) {
    case CompileStage::Parse: return "parse";
    case CompileStage::Validate: return "validate";
    case CompileStage::Order: return "order";
    }
    return "?";
}

CompileError::CompileError(CompileStage stage, std::vector<Diagnostic> diagnostics)
    : std::runtime_error(summarize(stage, diagnostics)), stage_(stage), diagnostics_(std::move(diagnostics))
{
}

const std::string& CompileError::kind() const
{
    static const std::string unknown = "error";
    for (const auto& d : diagnostics_)
        if (d.is_error())
            return d.code;
    return unknown;
}

std::vector<Diagnostic> check_erd(std::string_view source)
{
    auto parsed = parse_erd(source);
    if (!parsed.ok())
        return parsed.diagnostics;
    auto diags = std::move(parsed.diagnostics);
    for (auto& d : validate_erd(parsed.model))
        diags.push_back(std::move(d));
    return diags;
}

CompileOutput compile_erd(std::string_view source)
{
    auto parsed = parse_erd(source);
    if (!parsed.ok())
        throw CompileError(CompileStage::Parse, std::move(parsed.diagnostics));

    CompileOutput out;
    out.model = std::move(parsed.model);
    out.warnings = std::move(parsed.diagnostics);

    auto semantic = validate_erd(out.model);
    if (has_errors(semantic)) {
        for (auto& d : semantic)
            out.warnings.push_back(std::move(d));
        throw CompileError(CompileStage::Validate, std::move(out.warnings));
    }
    for (auto& d : semantic)
        out.warnings.push_back(std::move(d));

    try {
        out.script = generate_sql(out.model);
    } catch (const CyclicDependency& e) {
        const Entity* first = out.model.find_entity(e.cycle().front());
        Diagnostic d{Severity::Error, first ? first->loc.line : 0, first ? first->loc.column : 0,
                     "cyclic_dependency", e.what()};
        throw CompileError(CompileStage::Order, {std::move(d)});
    }
    return out;
}

} // namespace eduassist::erd
