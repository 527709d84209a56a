#pragma once

#include "legis/core/error.hpp"
#include "legis/graph/graph_store.hpp"
#include "legis/llm/gateway.hpp"
#include "legis/rag/pipeline.hpp"
#include "legis/report/report.hpp"
#include "legis/vector/hnsw.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>

namespace legis::service {

inline constexpr std::string_view kApiVersion = "1";
inline constexpr std::size_t kDefaultPageSize = 50;
inline constexpr std::size_t kMaxPageSize = 500;
inline constexpr std::size_t kMaxK = 1000;

struct ServiceConfig {
    std::filesystem::path snapshot_path;
    std::filesystem::path index_path; ///< rebuilt from stored texts when empty or missing
    std::string host = "127.0.0.1";
    int port = 8080;
    std::size_t default_k = rag::kDefaultK;
    report::Locale locale = report::Locale::It;
    std::string cors_origin; ///< empty disables CORS headers
    int threads = 8;
    llm::GatewayConfig gateway;

    /// Throws Error{InvalidArgument} for an out-of-range port or k.
    void validate() const;
};

/// Frozen shared state behind every request.
class ServiceContext {
public:
    ServiceContext(graph::GraphStore store, vector::HnswIndex index, std::shared_ptr<llm::LlmGateway> gateway,
                   ServiceConfig config);
    ServiceContext(const ServiceContext&) = delete;
    ServiceContext& operator=(const ServiceContext&) = delete;

    /// Loads the snapshot and the index (or rebuilds the index), freezes both.
    /// Throws Error{IoError} and snapshot errors.
    static std::unique_ptr<ServiceContext> load(const ServiceConfig& config);

    [[nodiscard]] const graph::GraphStore& store() const noexcept { return store_; }
    [[nodiscard]] const vector::HnswIndex& index() const noexcept { return index_; }
    [[nodiscard]] llm::LlmGateway& gateway() const noexcept { return *gateway_; }
    [[nodiscard]] const rag::ProfileCache& profiles() const noexcept { return profiles_; }
    [[nodiscard]] const rag::Pipeline& pipeline() const noexcept { return pipeline_; }
    [[nodiscard]] const ServiceConfig& config() const noexcept { return config_; }

private:
    graph::GraphStore store_;
    vector::HnswIndex index_;
    std::shared_ptr<llm::LlmGateway> gateway_;
    ServiceConfig config_;
    rag::ProfileCache profiles_;
    rag::Pipeline pipeline_;
};

struct ApiRequest {
    std::string method;
    std::string path; ///< percent-decoded
    std::map<std::string, std::string> query;
    std::string body;
};

struct ApiResponse {
    int status = 200;
    std::string content_type = "application/json";
    std::string body;
    std::map<std::string, std::string> headers;
};

/// Transport-independent request handler. Stateless over a frozen context;
/// safe to call from many threads.
class Api {
public:
    explicit Api(const ServiceContext& context) : ctx_(context) {}
    [[nodiscard]] ApiResponse handle(const ApiRequest& request) const;

private:
    [[nodiscard]] ApiResponse route(const ApiRequest& request) const;
    [[nodiscard]] ApiResponse list_laws(const ApiRequest& request) const;
    [[nodiscard]] ApiResponse get_law(const std::string& id) const;
    [[nodiscard]] ApiResponse law_report(const std::string& id, const ApiRequest& request) const;
    [[nodiscard]] ApiResponse analyze_draft(const ApiRequest& request) const;
    [[nodiscard]] ApiResponse landscape(const ApiRequest& request) const;
    [[nodiscard]] ApiResponse timeseries(const ApiRequest& request) const;
    [[nodiscard]] ApiResponse degree(const ApiRequest& request) const;
    [[nodiscard]] ApiResponse health() const;

    const ServiceContext& ctx_;
};

/// HTTP status for an error code: 400 validation, 404 unknown node,
/// 422 unusable input, 503 model backend failures, 500 otherwise.
int http_status(ErrorCode code) noexcept;

} // namespace legis::service
