#include "legis/llm/prompts.hpp"

#include "legis/core/error.hpp"
#include "legis/core/resources.hpp"
#include "legis/core/strings.hpp"
#include "legis/ingest/corpus.hpp"

#include <algorithm>

namespace legis::llm {

std::string_view to_string(TemplateId id) noexcept
{
    switch (id) {
    case TemplateId::TopicExtraction: return "topic_extraction";
    case TemplateId::TopicExpansion: return "topic_expansion";
    case TemplateId::ReportPolish: return "report_polish";
    }
    return "unknown";
}

TemplateId parse_template_id(std::string_view name)
{
    for (TemplateId id : kAllTemplates)
        if (to_string(id) == name)
            return id;
    throw Error(ErrorCode::UnknownTemplate, "unknown template: " + std::string(name));
}

PromptTemplate parse_prompt_template(std::string_view content)
{
    PromptTemplate out;
    std::string* section = nullptr;
    bool saw_user = false;
    for (const auto& raw : split(content, '\n')) {
        std::string_view line = raw;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line == "SYSTEM:") {
            section = &out.system;
            continue;
        }
        if (line == "USER:") {
            section = &out.user;
            saw_user = true;
            continue;
        }
        if (!section)
            continue;
        if (!section->empty())
            section->push_back('\n');
        section->append(line);
    }
    if (!saw_user)
        throw Error(ErrorCode::InvalidArgument, "prompt template has no USER section");
    out.system = std::string(trim(out.system));
    out.user = std::string(trim(out.user));
    return out;
}

namespace {

template <typename OnText, typename OnVar>
void scan_placeholders(std::string_view text, OnText on_text, OnVar on_var)
{
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto open = text.find("{{", pos);
        if (open == std::string_view::npos)
            break;
        const auto close = text.find("}}", open + 2);
        if (close == std::string_view::npos)
            break;
        on_text(text.substr(pos, open - pos));
        on_var(trim(text.substr(open + 2, close - open - 2)));
        pos = close + 2;
    }
    on_text(text.substr(std::min(pos, text.size())));
}

} // namespace

std::vector<std::string> placeholders(std::string_view text)
{
    std::vector<std::string> names;
    scan_placeholders(
        text, [](std::string_view) {},
        [&](std::string_view name) {
            if (std::find(names.begin(), names.end(), name) == names.end())
                names.emplace_back(name);
        });
    return names;
}

std::string render_placeholders(std::string_view text, const Variables& variables)
{
    std::string out;
    scan_placeholders(
        text, [&](std::string_view s) { out.append(s); },
        [&](std::string_view name) {
            const auto it = variables.find(name);
            if (it == variables.end())
                throw Error(ErrorCode::UnboundVariable, "unbound template variable: " + std::string(name));
            out.append(it->second);
        });
    return out;
}

const PromptLibrary& PromptLibrary::defaults()
{
    static const PromptLibrary lib = [] {
        PromptLibrary l;
        for (TemplateId id : kAllTemplates)
            l.templates_[id] = parse_prompt_template(resource("prompts/" + std::string(to_string(id)) + ".txt"));
        return l;
    }();
    return lib;
}

PromptLibrary PromptLibrary::load(const std::filesystem::path& dir)
{
    PromptLibrary l;
    for (TemplateId id : kAllTemplates)
        l.templates_[id] = parse_prompt_template(ingest::read_file(dir / (std::string(to_string(id)) + ".txt")));
    return l;
}

const PromptTemplate& PromptLibrary::get(TemplateId id) const
{
    const auto it = templates_.find(id);
    if (it == templates_.end())
        throw Error(ErrorCode::UnknownTemplate, "template not loaded: " + std::string(to_string(id)));
    return it->second;
}

std::vector<ChatMessage> PromptLibrary::render(TemplateId id, const Variables& variables) const
{
    const auto& t = get(id);
    std::vector<ChatMessage> messages;
    if (!t.system.empty())
        messages.push_back({"system", render_placeholders(t.system, variables)});
    messages.push_back({"user", render_placeholders(t.user, variables)});
    return messages;
}

} // namespace legis::llm
