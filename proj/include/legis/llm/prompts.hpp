#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace legis::llm {

enum class TemplateId { TopicExtraction, TopicExpansion, ReportPolish };

inline constexpr std::array kAllTemplates{TemplateId::TopicExtraction, TemplateId::TopicExpansion,
                                          TemplateId::ReportPolish};

std::string_view to_string(TemplateId id) noexcept;
/// "topic_extraction" etc. Throws Error{UnknownTemplate}.
TemplateId parse_template_id(std::string_view name);

using Variables = std::map<std::string, std::string, std::less<>>;

struct ChatMessage {
    std::string role;
    std::string content;

    friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

/// A template file holds a `SYSTEM:` section and a `USER:` section, each a
/// block of text with `{{name}}` placeholders.
struct PromptTemplate {
    std::string system;
    std::string user;
};

/// Throws Error{InvalidArgument} when the USER section is missing.
PromptTemplate parse_prompt_template(std::string_view content);

/// Names of the placeholders in `text`, in order of first appearance.
std::vector<std::string> placeholders(std::string_view text);

/// Substitutes every `{{name}}`. Throws Error{UnboundVariable}.
std::string render_placeholders(std::string_view text, const Variables& variables);

class PromptLibrary {
public:
    /// Shipped templates (data/prompts).
    static const PromptLibrary& defaults();
    /// Reads `<name>.txt` for every template id from `dir`.
    static PromptLibrary load(const std::filesystem::path& dir);

    [[nodiscard]] const PromptTemplate& get(TemplateId id) const;
    /// System and user messages with variables substituted.
    [[nodiscard]] std::vector<ChatMessage> render(TemplateId id, const Variables& variables) const;

private:
    std::map<TemplateId, PromptTemplate> templates_;
};

} // namespace legis::llm
