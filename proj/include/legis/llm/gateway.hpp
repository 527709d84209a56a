#pragma once

#include "legis/llm/prompts.hpp"
#include "legis/vector/embedding.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <optional>
#include <semaphore>
#include <string>
#include <vector>

namespace legis::llm {

struct ChatRequest {
    TemplateId template_id = TemplateId::TopicExtraction;
    Variables variables;
    int max_tokens = 512;
    double temperature = 0.0;
};

/// Transport to a model provider. Implementations throw
/// Error{BackendUnavailable} or Error{Timeout} for transient failures and
/// Error{GatewayError} for rejected requests or malformed responses.
class Backend {
public:
    virtual ~Backend() = default;
    [[nodiscard]] virtual std::string complete(const ChatRequest& request,
                                               const std::vector<ChatMessage>& messages) = 0;
    [[nodiscard]] virtual std::vector<double> embed(std::string_view text) = 0;
};

/// Offline deterministic backend.
///   topic_extraction: top-3 non-stopword words of {{text}} by frequency, ties alphabetical
///   topic_expansion:  the {{topics}} list followed by each topic + "-affine"
///   report_polish:    {{report}} unchanged
/// Embeddings come from HashingEmbedder.
class MockBackend final : public Backend {
public:
    explicit MockBackend(std::size_t dimension = vector::HashingEmbedder::kDefaultDimension);
    [[nodiscard]] std::string complete(const ChatRequest& request,
                                       const std::vector<ChatMessage>& messages) override;
    [[nodiscard]] std::vector<double> embed(std::string_view text) override;

private:
    vector::HashingEmbedder embedder_;
};

std::string mock_topic_extraction(std::string_view text);
std::string mock_topic_expansion(std::string_view topics);

enum class GatewayMode { Mock, Live };

struct GatewayConfig {
    GatewayMode mode = GatewayMode::Mock;
    std::string url;        ///< base URL, e.g. http://host:port/v1
    std::string api_key;
    std::string chat_model = "llama-3-70b-instruct";
    std::string embed_model = "text-embedding-3-small";
    std::size_t embed_dimension = vector::HashingEmbedder::kDefaultDimension;
    int retries = 2;
    std::chrono::milliseconds timeout{30000};
    std::chrono::milliseconds retry_backoff{200};
    int max_in_flight = 4;

    /// Reads LEGIS_LLM_MODE, LEGIS_LLM_URL, LEGIS_LLM_API_KEY, LEGIS_LLM_MODEL,
    /// LEGIS_EMBED_MODEL, LEGIS_EMBED_DIM. Throws Error{InvalidArgument} on a
    /// bad mode or a live mode without URL.
    static GatewayConfig from_env();
};

/// Client for chat and embedding calls. Renders templates before any
/// transport call, retries transient failures `retries` times, caps
/// concurrent in-flight calls. Safe for concurrent use.
class LlmGateway {
public:
    LlmGateway(std::shared_ptr<Backend> backend, GatewayConfig config = {},
               const PromptLibrary& prompts = PromptLibrary::defaults());

    /// Mock or HTTP backend chosen by `config.mode`.
    static std::shared_ptr<LlmGateway> from_config(const GatewayConfig& config);

    /// Throws Error{UnboundVariable}; after exhausted retries rethrows the
    /// last Error{BackendUnavailable} or Error{Timeout}; Error{GatewayError}
    /// is not retried.
    [[nodiscard]] std::string chat(const ChatRequest& request);
    /// Template name variant; Error{UnknownTemplate} before any call.
    [[nodiscard]] std::string chat(std::string_view template_name, const Variables& variables);

    /// Unit-normalized embedding. Throws Error{EmptyText} for blank text and
    /// Error{DimensionMismatch} if the backend returns the wrong size.
    [[nodiscard]] vector::EmbeddingVector embed(std::string_view text);

    [[nodiscard]] const GatewayConfig& config() const noexcept { return config_; }
    [[nodiscard]] std::size_t calls() const noexcept { return calls_.load(); }

private:
    template <typename F>
    auto with_retries(F&& attempt) -> decltype(attempt());

    std::shared_ptr<Backend> backend_;
    GatewayConfig config_;
    PromptLibrary prompts_;
    std::counting_semaphore<1024> slots_;
    std::atomic<std::size_t> calls_{0};
};

/// vector::Embedder view of a gateway.
class GatewayEmbedder final : public vector::Embedder {
public:
    explicit GatewayEmbedder(std::shared_ptr<LlmGateway> gateway) : gateway_(std::move(gateway)) {}
    [[nodiscard]] std::size_t dimension() const override { return gateway_->config().embed_dimension; }
    [[nodiscard]] vector::EmbeddingVector embed(std::string_view text) const override
    {
        return gateway_->embed(text);
    }

private:
    std::shared_ptr<LlmGateway> gateway_;
};

} // namespace legis::llm
