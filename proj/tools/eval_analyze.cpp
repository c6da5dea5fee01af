#include "cli_common.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Sentiment, emotion and keyword report for course evaluation comments"};
    eduassist::cli::AnalyzeOptions opts;
    eduassist::cli::add_analyze_options(app, opts);
    CLI11_PARSE(app, argc, argv);
    return eduassist::cli::run_analyze(opts, std::cout, std::cerr);
}
