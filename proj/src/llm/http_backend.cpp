#include "legis/llm/http_backend.hpp"

#include "legis/core/error.hpp"

#include <httplib.h>
#include <json.hpp>

namespace legis::llm {

using nlohmann::json;

HttpBackend::HttpBackend(GatewayConfig config) : config_(std::move(config))
{
    const auto& url = config_.url;
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw Error(ErrorCode::InvalidArgument, "backend URL needs a scheme: " + url);
    const auto scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https")
        throw Error(ErrorCode::InvalidArgument, "unsupported URL scheme: " + scheme);
    const auto path_start = url.find('/', scheme_end + 3);
    origin_ = url.substr(0, path_start);
    base_path_ = path_start == std::string::npos ? "" : url.substr(path_start);
    while (!base_path_.empty() && base_path_.back() == '/')
        base_path_.pop_back();
}

std::string HttpBackend::post(const std::string& path, const std::string& body)
{
    httplib::Client client(origin_);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    httplib::Headers headers;
    if (!config_.api_key.empty())
        headers.emplace("Authorization", "Bearer " + config_.api_key);

    const auto res = client.Post(base_path_ + path, headers, body, "application/json");
    if (!res) {
        const auto err = res.error();
        const auto what = httplib::to_string(err);
        if (err == httplib::Error::Read || err == httplib::Error::ConnectionTimeout)
            throw Error(ErrorCode::Timeout, "model backend timed out: " + what);
        throw Error(ErrorCode::BackendUnavailable, "model backend unreachable: " + what);
    }
    if (res->status >= 500 || res->status == 429)
        throw Error(ErrorCode::BackendUnavailable, "model backend returned HTTP " + std::to_string(res->status));
    if (res->status != 200)
        throw Error(ErrorCode::GatewayError, "model backend rejected request: HTTP " + std::to_string(res->status));
    return res->body;
}

std::string HttpBackend::complete(const ChatRequest& request, const std::vector<ChatMessage>& messages)
{
    json msgs = json::array();
    for (const auto& m : messages)
        msgs.push_back({{"role", m.role}, {"content", m.content}});
    const json body{{"model", config_.chat_model},
                    {"messages", msgs},
                    {"temperature", request.temperature},
                    {"max_tokens", request.max_tokens}};
    const auto raw = post("/chat/completions", body.dump());
    try {
        const auto j = json::parse(raw);
        return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::GatewayError, std::string("malformed chat response: ") + e.what());
    }
}

std::vector<double> HttpBackend::embed(std::string_view text)
{
    const json body{{"model", config_.embed_model}, {"input", std::string(text)}};
    const auto raw = post("/embeddings", body.dump());
    try {
        const auto j = json::parse(raw);
        return j.at("data").at(0).at("embedding").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::GatewayError, std::string("malformed embedding response: ") + e.what());
    }
}

} // namespace legis::llm
