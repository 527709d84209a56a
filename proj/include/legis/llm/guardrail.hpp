#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace legis::llm {

struct GuardrailVerdict {
    bool passed = true;
    /// Distinct matched patterns, in pattern-list order.
    std::vector<std::string> violations;

    friend bool operator==(const GuardrailVerdict&, const GuardrailVerdict&) = default;
};

/// One phrase per line, `#` comments; lowercased, file order kept.
std::vector<std::string> parse_pattern_list(std::string_view content);

/// Shipped recommendation/opinion phrases (data/guardrail_patterns.txt).
const std::vector<std::string>& default_guardrail_patterns();

/// Case-insensitive whole-word phrase search. Text between double quotes
/// (straight, curly or guillemets) is skipped, so quoted titles and metric
/// names never trigger a violation.
GuardrailVerdict check_neutrality(std::string_view text);
GuardrailVerdict check_neutrality(std::string_view text, const std::vector<std::string>& patterns);

/// Splits a line- or comma-delimited list, strips bullets, numbering and
/// quotes, lowercases, deduplicates, keeps the first `max_items`.
/// Throws Error{UnparsableOutput} when nothing remains.
std::vector<std::string> parse_topic_list(std::string_view raw, std::size_t max_items = 10);

} // namespace legis::llm
