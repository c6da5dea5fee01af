#include "cli_common.hpp"

#include "eduassist/service/http.hpp"

#include <csignal>
#include <iostream>
#include <pthread.h>

namespace {

int serve(const std::string& config_path)
{
    using namespace eduassist::service;

    // Route SIGINT/SIGTERM to a waiting thread instead of an async handler.
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    try {
        const auto cfg = load_config(config_path);
        Service service(cfg);
        HttpServer server(service);
        const int port = server.bind(cfg.bind_host, cfg.bind_port);
        std::cerr << "eduassist " << service_version() << " listening on http://" << cfg.bind_host << ":" << port
                  << " (provider: " << eduassist::chat::to_string(cfg.provider.kind) << ", data: "
                  << cfg.data_dir.string() << ")\n";

        std::thread waiter([&] {
            int sig = 0;
            sigwait(&signals, &sig);
            std::cerr << "eduassist: shutting down\n";
            server.stop();
        });
        server.listen();
        // listen() can also return on its own; wake the waiter either way.
        pthread_kill(waiter.native_handle(), SIGTERM);
        waiter.join();
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "eduassist: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Course assistant service and tools"};
    app.require_subcommand(1);

    std::string config_path;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
    serve_cmd->add_option("--config", config_path, "Config file")->required()->check(CLI::ExistingFile);

    eduassist::cli::AnalyzeOptions analyze_opts;
    auto* analyze_cmd = app.add_subcommand("analyze", "Analyze a file of evaluation comments");
    eduassist::cli::add_analyze_options(*analyze_cmd, analyze_opts);

    eduassist::cli::ErdOptions erd_opts;
    auto* erd_cmd = app.add_subcommand("erd", "Compile an ERD description to SQL");
    eduassist::cli::add_erd_options(*erd_cmd, erd_opts);

    CLI11_PARSE(app, argc, argv);

    if (serve_cmd->parsed())
        return serve(config_path);
    if (analyze_cmd->parsed())
        return eduassist::cli::run_analyze(analyze_opts, std::cout, std::cerr);
    return eduassist::cli::run_erd(erd_opts, std::cout, std::cerr);
}
