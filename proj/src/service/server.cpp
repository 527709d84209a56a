#include "legis/service/server.hpp"

#include <httplib.h>

namespace legis::service {

HttpServer::HttpServer(const ServiceContext& context)
    : api_(context), server_(std::make_unique<httplib::Server>())
{
    const int threads = context.config().threads;
    server_->new_task_queue = [threads] { return new httplib::ThreadPool(static_cast<std::size_t>(threads)); };

    const auto handler = [this](const httplib::Request& req, httplib::Response& res) {
        ApiRequest request;
        request.method = req.method;
        request.path = req.path;
        for (const auto& [k, v] : req.params)
            request.query.emplace(k, v);
        request.body = req.body;
        const auto response = api_.handle(request);
        res.status = response.status;
        for (const auto& [k, v] : response.headers)
            res.set_header(k, v);
        if (!response.content_type.empty())
            res.set_content(response.body, response.content_type);
    };
    server_->Get(".*", handler);
    server_->Post(".*", handler);
    server_->Options(".*", handler);
}

HttpServer::~HttpServer()
{
    stop();
}

int HttpServer::bind(const std::string& host, int port)
{
    const int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
    if (bound <= 0)
        throw Error(ErrorCode::IoError, "cannot bind " + host + ":" + std::to_string(port));
    return bound;
}

void HttpServer::listen()
{
    server_->listen_after_bind();
}

void HttpServer::stop()
{
    if (server_)
        server_->stop();
}

bool HttpServer::running() const
{
    return server_->is_running();
}

} // namespace legis::service
