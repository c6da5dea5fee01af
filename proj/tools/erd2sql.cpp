#include "cli_common.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Compile an ERD description into SQL CREATE TABLE statements"};
    eduassist::cli::ErdOptions opts;
    eduassist::cli::add_erd_options(app, opts);
    CLI11_PARSE(app, argc, argv);
    return eduassist::cli::run_erd(opts, std::cout, std::cerr);
}
