#pragma once

#include "legis/llm/gateway.hpp"

namespace legis::llm {

/// Chat and embedding calls over HTTP(S):
///   POST {url}/chat/completions  {model, messages, temperature, max_tokens}
///   POST {url}/embeddings        {model, input}
/// with `Authorization: Bearer <api_key>` when a key is configured.
class HttpBackend final : public Backend {
public:
    explicit HttpBackend(GatewayConfig config);
    [[nodiscard]] std::string complete(const ChatRequest& request,
                                       const std::vector<ChatMessage>& messages) override;
    [[nodiscard]] std::vector<double> embed(std::string_view text) override;

private:
    [[nodiscard]] std::string post(const std::string& path, const std::string& body);

    GatewayConfig config_;
    std::string origin_;    ///< scheme://host[:port]
    std::string base_path_; ///< path prefix without trailing slash
};

} // namespace legis::llm
