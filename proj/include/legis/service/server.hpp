#pragma once

#include "legis/service/api.hpp"

#include <functional>
#include <memory>

namespace httplib {
class Server;
}

namespace legis::service {

/// httplib front end for Api. All methods go through Api::handle.
class HttpServer {
public:
    explicit HttpServer(const ServiceContext& context);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds `port` (0 picks a free one) and returns the bound port.
    /// Throws Error{IoError} when binding fails.
    int bind(const std::string& host, int port);
    /// Blocks until stop().
    void listen();
    void stop();
    [[nodiscard]] bool running() const;

private:
    Api api_;
    std::unique_ptr<httplib::Server> server_;
};

} // namespace legis::service
