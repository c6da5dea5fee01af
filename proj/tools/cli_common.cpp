#include "cli_common.hpp"

#include "eduassist/erd/compiler.hpp"
#include "eduassist/feedback/corpus.hpp"
#include "eduassist/feedback/report.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace eduassist::cli {

namespace {

std::optional<std::string> read_file(const std::filesystem::path& path, std::ostream& err)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err << "error: cannot read " << path.string() << "\n";
        return std::nullopt;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool write_file(const std::filesystem::path& path, const std::string& content, std::ostream& err)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
    if (!out.flush()) {
        err << "error: cannot write " << path.string() << "\n";
        return false;
    }
    return true;
}

void print_diagnostics(const std::filesystem::path& file, const std::vector<Diagnostic>& ds, std::ostream& err)
{
    for (const auto& d : ds)
        err << file.string() << ":" << format_diagnostic(d) << "\n";
}

std::filesystem::path default_lexicon_dir()
{
    if (const char* env = std::getenv("EDUASSIST_ANALYZER_LEXICON_DIR"))
        return env;
#ifdef EDUASSIST_DEFAULT_LEXICON_DIR
    return EDUASSIST_DEFAULT_LEXICON_DIR;
#else
    return "lexicon";
#endif
}

} // namespace

void add_erd_options(CLI::App& app, ErdOptions& opts)
{
    app.add_option("input", opts.input, "ERD source file")->required();
    app.add_option("-o,--output", opts.output, "Write SQL here instead of stdout");
    app.add_flag("--check", opts.check_only, "Parse and validate only; exit 1 when there are warnings");
}

void add_analyze_options(CLI::App& app, AnalyzeOptions& opts)
{
    opts.lexicon_dir = default_lexicon_dir();
    app.add_option("input", opts.input, "Plain-text (one comment per line) or CSV file")->required();
    app.add_option("--format", opts.format, "Input format")->check(CLI::IsMember({"plain", "csv"}));
    app.add_option("--lexicon-dir", opts.lexicon_dir, "Directory holding valence.tsv, emotions.tsv, stopwords.txt")
        ->capture_default_str();
    app.add_option("--out", opts.out, "Write the JSON report to this file");
    app.add_flag("--json", opts.json, "Print JSON instead of the text summary");
}

int run_erd(const ErdOptions& opts, std::ostream& out, std::ostream& err)
{
    const auto source = read_file(opts.input, err);
    if (!source)
        return 2;

    if (opts.check_only) {
        const auto ds = erd::check_erd(*source);
        print_diagnostics(opts.input, ds, err);
        if (has_errors(ds))
            return 2;
        return ds.empty() ? 0 : 1;
    }

    try {
        const auto result = erd::compile_erd(*source);
        print_diagnostics(opts.input, result.warnings, err);
        const auto sql = result.script.str();
        if (opts.output)
            return write_file(*opts.output, sql, err) ? 0 : 2;
        out << sql;
        return 0;
    } catch (const erd::CompileError& e) {
        print_diagnostics(opts.input, e.diagnostics(), err);
        return 2;
    }
}

int run_analyze(const AnalyzeOptions& opts, std::ostream& out, std::ostream& err)
{
    const auto raw = read_file(opts.input, err);
    if (!raw)
        return 2;
    try {
        const auto format = opts.format.empty() ? feedback::format_from_filename(opts.input.string())
                                                : feedback::parse_input_format(opts.format);
        const auto comments = feedback::ingest_comments(*raw, format);
        const auto lexicon = feedback::load_lexicon(opts.lexicon_dir);
        const auto report = feedback::analyze(comments, lexicon);
        if (opts.out && !write_file(*opts.out, feedback::render_report(report, feedback::ReportFormat::Json), err))
            return 2;
        out << feedback::render_report(report, opts.json ? feedback::ReportFormat::Json : feedback::ReportFormat::Text);
        return 0;
    } catch (const feedback::IngestError& e) {
        err << "error: " << opts.input.string() << ": " << e.what() << "\n";
    } catch (const feedback::LexiconError& e) {
        err << "error: lexicon: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
    }
    return 2;
}

} // namespace eduassist::cli
