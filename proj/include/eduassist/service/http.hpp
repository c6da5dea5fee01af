#pragma once

#include "eduassist/service/service.hpp"

#include <httplib.h>

#include <string>
#include <thread>

namespace eduassist::service {

// Registers every /api route, CORS handling and JSON error pages.
void mount_routes(httplib::Server& server, Service& service);

// Owns an httplib server bound to the configured address. Port 0 picks a
// free port.
class HttpServer {
public:
    explicit HttpServer(Service& service);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    // Returns the bound port; throws std::runtime_error when binding fails.
    int bind(const std::string& host, int port);

    // Blocks until stop() is called.
    void listen();

    // bind() then listen() on a background thread.
    int start(const std::string& host, int port);
    void stop();

    int port() const { return port_; }

private:
    httplib::Server server_;
    int port_ = -1;
    std::thread thread_;
};

} // namespace eduassist::service
