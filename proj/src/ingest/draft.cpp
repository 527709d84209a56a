#include "legis/ingest/draft.hpp"

#include "legis/core/error.hpp"
#include "legis/core/strings.hpp"
#include "legis/ingest/corpus.hpp"

namespace legis::ingest {

DraftProposal parse_draft(std::string_view text, const std::map<std::string, std::string>& metadata)
{
    const auto get = [&](const char* key) -> std::string {
        const auto it = metadata.find(key);
        return it == metadata.end() ? std::string() : std::string(trim(it->second));
    };

    DraftProposal draft;
    draft.title = collapse_whitespace(get("title"));
    draft.text = std::string(trim(text));
    if (draft.title.empty() && draft.text.empty())
        throw Error(ErrorCode::EmptyDraft, "draft has neither title nor text");

    draft.draft_id = get("draft_id");
    if (draft.draft_id.empty())
        draft.draft_id = "draft-" + sha256_hex(draft.title + "\n" + draft.text).substr(0, 16);
    if (auto p = get("proponent"); !p.empty())
        draft.proponent = std::move(p);
    if (auto d = get("submitted_date"); !d.empty())
        draft.submitted_date = Date::parse(d);
    return draft;
}

DraftProposal load_draft_file(const std::filesystem::path& path)
{
    const std::string content = read_file(path);
    std::map<std::string, std::string> metadata;
    std::size_t pos = 0;
    while (pos < content.size()) {
        const auto eol = content.find('\n', pos);
        const std::string_view line =
            std::string_view(content).substr(pos, eol == std::string::npos ? std::string::npos : eol - pos);
        const auto colon = line.find(':');
        if (trim(line).empty() || colon == std::string_view::npos) {
            if (trim(line).empty())
                pos = eol == std::string::npos ? content.size() : eol + 1;
            break;
        }
        std::string key = ascii_lower(trim(line.substr(0, colon)));
        for (char& c : key)
            if (c == ' ' || c == '-')
                c = '_';
        if (key == "date")
            key = "submitted_date";
        if (key == "id")
            key = "draft_id";
        metadata[key] = std::string(trim(line.substr(colon + 1)));
        pos = eol == std::string::npos ? content.size() : eol + 1;
    }
    return parse_draft(std::string_view(content).substr(pos), metadata);
}

} // namespace legis::ingest
