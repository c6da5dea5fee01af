#pragma once

#include <CLI11.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace eduassist::cli {

struct ErdOptions {
    std::filesystem::path input;
    std::optional<std::filesystem::path> output;
    bool check_only = false;
};

struct AnalyzeOptions {
    std::filesystem::path input;
    std::string format; // "" picks from the file extension
    std::filesystem::path lexicon_dir;
    std::optional<std::filesystem::path> out;
    bool json = false;
};

void add_erd_options(CLI::App& app, ErdOptions& opts);
void add_analyze_options(CLI::App& app, AnalyzeOptions& opts);

// Exit codes: 0 clean, 1 warnings only (with --check), 2 errors.
int run_erd(const ErdOptions& opts, std::ostream& out, std::ostream& err);

// Exit codes: 0 success, 2 unreadable or unusable input.
int run_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err);

} // namespace eduassist::cli
