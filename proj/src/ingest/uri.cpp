#include "legis/ingest/uri.hpp"

#include "legis/core/date.hpp"
#include "legis/core/error.hpp"
#include "legis/core/strings.hpp"

#include <vector>

namespace legis::ingest {

namespace {

[[noreturn]] void unparsable(std::string_view raw, std::string_view why)
{
    throw Error(ErrorCode::UnparsableHref,
                "unparsable href '" + std::string(raw) + "': " + std::string(why));
}

bool is_date_segment(std::string_view s)
{
    if (s.size() != 10)
        return false;
    try {
        Date::parse(s);
        return true;
    } catch (const Error&) {
        return false;
    }
}

bool all_letters(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')))
            return false;
    return true;
}

bool valid_label(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-' || c == '.' ||
                        c == '_';
        if (!ok)
            return false;
    }
    return true;
}

/// Splits "art_4#com_2", "art_4__para_2" into fragment tokens.
std::vector<std::string> fragment_tokens(std::string_view fragment)
{
    std::vector<std::string> tokens;
    std::string current;
    for (std::size_t i = 0; i < fragment.size(); ++i) {
        const char c = fragment[i];
        if (c == '#' || (c == '_' && i + 1 < fragment.size() && fragment[i + 1] == '_')) {
            if (!current.empty())
                tokens.push_back(std::move(current));
            current.clear();
            if (c == '_')
                ++i;
            continue;
        }
        current.push_back(c);
    }
    if (!current.empty())
        tokens.push_back(std::move(current));
    return tokens;
}

} // namespace

NormalizedUri normalize_uri(std::string_view raw_href)
{
    const std::string_view href = trim(raw_href);
    if (href.empty())
        unparsable(raw_href, "empty");

    const auto hash = href.find('#');
    std::string_view path = href.substr(0, hash);
    const std::string_view fragment = hash == std::string_view::npos ? std::string_view{}
                                                                     : href.substr(hash + 1);

    const std::string lowered_path = ascii_lower(path);
    const auto akn = lowered_path.find("/akn/");
    if (akn == std::string::npos)
        unparsable(raw_href, "no /akn/ path");
    if (akn != 0) {
        const std::string_view prefix = std::string_view(lowered_path).substr(0, akn);
        if (!(prefix.starts_with("http://") || prefix.starts_with("https://")) ||
            prefix.find('/', prefix.find("://") + 3) != std::string_view::npos)
            unparsable(raw_href, "unexpected prefix before /akn/");
    }
    path.remove_prefix(akn + 1);

    std::vector<std::string> segments;
    for (auto& seg : split(path, '/'))
        if (!seg.empty())
            segments.push_back(std::move(seg));

    // akn / country / act / [subtypes...] / date / number / [ignored...]
    if (segments.size() < 5 || ascii_lower(segments[0]) != "akn" || !all_letters(segments[1]) ||
        ascii_lower(segments[2]) != "act")
        unparsable(raw_href, "expected /akn/{country}/act/...");
    std::size_t date_pos = 3;
    while (date_pos < segments.size() && !is_date_segment(segments[date_pos]))
        ++date_pos;
    if (date_pos >= segments.size() || date_pos > 6)
        unparsable(raw_href, "no act date");
    if (date_pos + 1 >= segments.size())
        unparsable(raw_href, "no act number");
    const std::string number = ascii_lower(segments[date_pos + 1]);
    if (!valid_label(number))
        unparsable(raw_href, "bad act number");

    NormalizedUri out;
    out.uri = "/akn/" + ascii_lower(segments[1]) + "/act/" + segments[date_pos] + "/" + number;

    std::string article;
    for (const auto& token : fragment_tokens(fragment)) {
        const std::string t = ascii_lower(token);
        if (t.starts_with("art_") && article.empty() && valid_label(t.substr(4))) {
            article = t.substr(4);
        } else if (t.starts_with("com_") || t.starts_with("par_") || t.starts_with("para_")) {
            out.specifies_paragraph = true;
        }
    }
    if (!article.empty())
        out.uri += "#art_" + article;
    return out;
}

std::string_view law_part(std::string_view canonical_uri) noexcept
{
    return canonical_uri.substr(0, canonical_uri.find('#'));
}

} // namespace legis::ingest
