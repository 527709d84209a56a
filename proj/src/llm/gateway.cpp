#include "legis/llm/gateway.hpp"

#include "legis/core/error.hpp"
#include "legis/core/strings.hpp"
#include "legis/llm/guardrail.hpp"
#include "legis/llm/http_backend.hpp"
#include "legis/text/lexicons.hpp"
#include "legis/text/metrics.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <thread>

namespace legis::llm {

std::string mock_topic_extraction(std::string_view text)
{
    const auto& stop = text::default_stopwords();
    std::map<std::string, int> freq;
    for (const auto& w : text::words(text))
        if (!stop.contains(w) && w.size() >= 3)
            ++freq[w];
    std::vector<std::pair<std::string, int>> ranked(freq.begin(), freq.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<std::string> top;
    for (std::size_t i = 0; i < ranked.size() && i < 3; ++i)
        top.push_back(ranked[i].first);
    return join(top, ", ");
}

std::string mock_topic_expansion(std::string_view topics)
{
    std::vector<std::string> seed;
    try {
        seed = parse_topic_list(topics);
    } catch (const Error&) {
        return "";
    }
    auto out = seed;
    for (const auto& t : seed)
        out.push_back(t + "-affine");
    return join(out, ", ");
}

MockBackend::MockBackend(std::size_t dimension) : embedder_(dimension) {}

std::string MockBackend::complete(const ChatRequest& request, const std::vector<ChatMessage>&)
{
    const auto var = [&](std::string_view name) -> std::string_view {
        const auto it = request.variables.find(name);
        return it == request.variables.end() ? std::string_view{} : std::string_view{it->second};
    };
    switch (request.template_id) {
    case TemplateId::TopicExtraction: return mock_topic_extraction(var("text"));
    case TemplateId::TopicExpansion: return mock_topic_expansion(var("topics"));
    case TemplateId::ReportPolish: return std::string(var("report"));
    }
    throw Error(ErrorCode::UnknownTemplate, "unknown template");
}

std::vector<double> MockBackend::embed(std::string_view text)
{
    const auto v = embedder_.embed(text);
    return {v.values().begin(), v.values().end()};
}

GatewayConfig GatewayConfig::from_env()
{
    const auto env = [](const char* name) -> std::optional<std::string> {
        const char* v = std::getenv(name);
        if (!v || !*v)
            return std::nullopt;
        return std::string(v);
    };
    GatewayConfig c;
    if (const auto mode = env("LEGIS_LLM_MODE")) {
        const auto m = ascii_lower(*mode);
        if (m == "mock")
            c.mode = GatewayMode::Mock;
        else if (m == "live")
            c.mode = GatewayMode::Live;
        else
            throw Error(ErrorCode::InvalidArgument, "LEGIS_LLM_MODE must be mock or live, got " + *mode);
    }
    if (auto v = env("LEGIS_LLM_URL"))
        c.url = *v;
    if (auto v = env("LEGIS_LLM_API_KEY"))
        c.api_key = *v;
    if (auto v = env("LEGIS_LLM_MODEL"))
        c.chat_model = *v;
    if (auto v = env("LEGIS_EMBED_MODEL"))
        c.embed_model = *v;
    if (auto v = env("LEGIS_EMBED_DIM")) {
        const long d = std::strtol(v->c_str(), nullptr, 10);
        if (d <= 0)
            throw Error(ErrorCode::InvalidArgument, "LEGIS_EMBED_DIM must be a positive integer");
        c.embed_dimension = static_cast<std::size_t>(d);
    }
    if (c.mode == GatewayMode::Live && c.url.empty())
        throw Error(ErrorCode::InvalidArgument, "LEGIS_LLM_URL is required in live mode");
    return c;
}

LlmGateway::LlmGateway(std::shared_ptr<Backend> backend, GatewayConfig config, const PromptLibrary& prompts)
    : backend_(std::move(backend)), config_(std::move(config)), prompts_(prompts),
      slots_(std::clamp(config_.max_in_flight, 1, 1024))
{
    if (!backend_)
        throw Error(ErrorCode::InvalidArgument, "gateway needs a backend");
    if (config_.retries < 0)
        throw Error(ErrorCode::InvalidArgument, "retries must be non-negative");
}

std::shared_ptr<LlmGateway> LlmGateway::from_config(const GatewayConfig& config)
{
    std::shared_ptr<Backend> backend;
    if (config.mode == GatewayMode::Live)
        backend = std::make_shared<HttpBackend>(config);
    else
        backend = std::make_shared<MockBackend>(config.embed_dimension);
    return std::make_shared<LlmGateway>(std::move(backend), config);
}

template <typename F>
auto LlmGateway::with_retries(F&& attempt) -> decltype(attempt())
{
    struct Slot {
        std::counting_semaphore<1024>& s;
        explicit Slot(std::counting_semaphore<1024>& sem) : s(sem) { s.acquire(); }
        ~Slot() { s.release(); }
    } slot(slots_);

    for (int tries = 0;; ++tries) {
        try {
            ++calls_;
            return attempt();
        } catch (const Error& e) {
            const bool transient = e.code() == ErrorCode::BackendUnavailable || e.code() == ErrorCode::Timeout;
            if (!transient || tries >= config_.retries)
                throw;
        }
        if (config_.retry_backoff.count() > 0)
            std::this_thread::sleep_for(config_.retry_backoff * (tries + 1));
    }
}

std::string LlmGateway::chat(const ChatRequest& request)
{
    const auto messages = prompts_.render(request.template_id, request.variables);
    return with_retries([&] { return backend_->complete(request, messages); });
}

std::string LlmGateway::chat(std::string_view template_name, const Variables& variables)
{
    ChatRequest request;
    request.template_id = parse_template_id(template_name);
    request.variables = variables;
    return chat(request);
}

vector::EmbeddingVector LlmGateway::embed(std::string_view text)
{
    if (trim(text).empty())
        throw Error(ErrorCode::EmptyText, "nothing to embed");
    auto values = with_retries([&] { return backend_->embed(text); });
    if (values.size() != config_.embed_dimension)
        throw Error(ErrorCode::DimensionMismatch, "backend returned dimension " + std::to_string(values.size()) +
                                                      ", expected " + std::to_string(config_.embed_dimension));
    try {
        return vector::EmbeddingVector::normalized(std::move(values));
    } catch (const Error& e) {
        throw Error(ErrorCode::GatewayError, std::string("unusable embedding: ") + e.what());
    }
}

} // namespace legis::llm
