#include "legis/llm/guardrail.hpp"

#include "legis/core/error.hpp"
#include "legis/core/resources.hpp"
#include "legis/core/strings.hpp"

#include <algorithm>
#include <cctype>

namespace legis::llm {

namespace {

bool is_word_char(char32_t c) noexcept
{
    return is_letter(c) || (c >= U'0' && c <= U'9');
}

bool is_space(char32_t c) noexcept
{
    return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\f' || c == U'\v' || c == 0xA0;
}

std::u32string decode_lower(std::string_view s)
{
    const auto lower = utf8_lower(s);
    std::u32string out;
    std::size_t pos = 0;
    while (pos < lower.size())
        out.push_back(next_code_point(lower, pos));
    return out;
}

/// Unquoted stretches of `text`, lowercased, whitespace runs collapsed.
std::vector<std::u32string> unquoted_segments(std::string_view text)
{
    std::vector<std::u32string> segments(1);
    char32_t closer = 0;
    for (char32_t c : decode_lower(text)) {
        if (closer) {
            if (c == closer) {
                closer = 0;
                segments.emplace_back();
            }
            continue;
        }
        if (c == U'"' || c == 0x201C || c == 0x00AB) {
            closer = c == U'"' ? U'"' : (c == 0x201C ? char32_t{0x201D} : char32_t{0x00BB});
            continue;
        }
        auto& seg = segments.back();
        if (is_space(c)) {
            if (!seg.empty() && seg.back() != U' ')
                seg.push_back(U' ');
        } else {
            seg.push_back(c);
        }
    }
    return segments;
}

bool contains_phrase(const std::u32string& hay, const std::u32string& needle)
{
    if (needle.empty())
        return false;
    for (std::size_t pos = hay.find(needle); pos != std::u32string::npos; pos = hay.find(needle, pos + 1)) {
        const bool left = pos == 0 || !is_word_char(hay[pos - 1]);
        const std::size_t end = pos + needle.size();
        const bool right = end == hay.size() || !is_word_char(hay[end]);
        if (left && right)
            return true;
    }
    return false;
}

} // namespace

std::vector<std::string> parse_pattern_list(std::string_view content)
{
    std::vector<std::string> out;
    for (const auto& line : split(content, '\n')) {
        const auto entry = trim(line);
        if (entry.empty() || entry.front() == '#')
            continue;
        auto p = collapse_whitespace(utf8_lower(entry));
        if (std::find(out.begin(), out.end(), p) == out.end())
            out.push_back(std::move(p));
    }
    return out;
}

const std::vector<std::string>& default_guardrail_patterns()
{
    static const auto patterns = parse_pattern_list(resource("guardrail_patterns.txt"));
    return patterns;
}

GuardrailVerdict check_neutrality(std::string_view text)
{
    return check_neutrality(text, default_guardrail_patterns());
}

GuardrailVerdict check_neutrality(std::string_view text, const std::vector<std::string>& patterns)
{
    const auto segments = unquoted_segments(text);
    GuardrailVerdict verdict;
    for (const auto& pattern : patterns) {
        std::u32string needle;
        for (char32_t c : decode_lower(collapse_whitespace(pattern)))
            needle.push_back(c);
        if (std::find(verdict.violations.begin(), verdict.violations.end(), pattern) != verdict.violations.end())
            continue;
        for (const auto& seg : segments) {
            if (contains_phrase(seg, needle)) {
                verdict.violations.push_back(pattern);
                break;
            }
        }
    }
    verdict.passed = verdict.violations.empty();
    return verdict;
}

namespace {

std::string_view strip_marker(std::string_view item)
{
    item = trim(item);
    for (std::string_view bullet : {"-", "*", "+", "•", "–", "—"}) {
        if (item.starts_with(bullet)) {
            item.remove_prefix(bullet.size());
            return trim(item);
        }
    }
    std::size_t digits = 0;
    while (digits < item.size() && std::isdigit(static_cast<unsigned char>(item[digits])))
        ++digits;
    if (digits > 0 && digits < item.size() && (item[digits] == '.' || item[digits] == ')'))
        item.remove_prefix(digits + 1);
    return trim(item);
}

std::string_view strip_quotes(std::string_view item)
{
    static constexpr std::string_view kQuotes[] = {"\"", "'", "`", "“", "”", "«", "»",
                                                   "‘", "’"};
    bool changed = true;
    while (changed && !item.empty()) {
        changed = false;
        for (auto q : kQuotes) {
            if (item.starts_with(q)) {
                item.remove_prefix(q.size());
                changed = true;
            }
            if (item.ends_with(q)) {
                item.remove_suffix(q.size());
                changed = true;
            }
        }
        while (!item.empty() && (item.back() == '.' || item.back() == ';' || item.back() == ':')) {
            item.remove_suffix(1);
            changed = true;
        }
        item = trim(item);
    }
    return item;
}

} // namespace

std::vector<std::string> parse_topic_list(std::string_view raw, std::size_t max_items)
{
    std::vector<std::string> topics;
    for (const auto& line : split(raw, '\n')) {
        for (const auto& piece : split(line, ',')) {
            auto topic = collapse_whitespace(utf8_lower(strip_quotes(strip_marker(piece))));
            if (topic.empty())
                continue;
            if (std::find(topics.begin(), topics.end(), topic) != topics.end())
                continue;
            topics.push_back(std::move(topic));
            if (topics.size() == max_items)
                return topics;
        }
    }
    if (topics.empty())
        throw Error(ErrorCode::UnparsableOutput, "no topics in model output");
    return topics;
}

} // namespace legis::llm
