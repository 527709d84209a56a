#pragma once

#include "legis/text/metrics.hpp"

#include <json.hpp>

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace legis::llm {
class LlmGateway;
}

namespace legis::report {

enum class Metric {
    AvgWordLength,
    AvgSentenceLength,
    GerundRatio,
    AdjectiveRatio,
    PronounRatio,
    Flesch,
    Gulpease,
    EmbeddingIndex,
    CenterEmbeddingIndex,
};

inline constexpr std::array kAllMetrics{
    Metric::AvgWordLength, Metric::AvgSentenceLength, Metric::GerundRatio,
    Metric::AdjectiveRatio, Metric::PronounRatio, Metric::Flesch,
    Metric::Gulpease, Metric::EmbeddingIndex, Metric::CenterEmbeddingIndex,
};

std::string_view to_string(Metric m) noexcept;
double metric_value(const text::ReadabilityProfile& p, Metric m) noexcept;

struct MetricStats {
    Metric metric = Metric::Gulpease;
    double subject_value = 0;
    double set_mean = 0;
    double set_std = 0;    ///< population
    double z_score = 0;    ///< 0 when set_std is 0
    double percentile = 0; ///< midrank, in [0, 100]

    friend bool operator==(const MetricStats&, const MetricStats&) = default;
};

struct StatsBundle {
    std::string subject_label;
    std::string set_descriptor;
    std::size_t set_size = 0;
    std::vector<MetricStats> metrics; ///< kAllMetrics order

    [[nodiscard]] const MetricStats& at(Metric m) const;

    friend bool operator==(const StatsBundle&, const StatsBundle&) = default;
};

/// Per-metric mean, population std, z-score and midrank percentile of the
/// subject within `others`. Sums run over sorted values, so the result does
/// not depend on the order of `others`. Throws Error{EmptyComparisonSet}.
StatsBundle comparison_stats(const text::ReadabilityProfile& subject,
                             const std::vector<text::ReadabilityProfile>& others,
                             std::string subject_label = {}, std::string set_descriptor = {});

/// Population mean/std over sorted copies of `values`; std is exactly 0 when
/// all values are equal.
std::pair<double, double> mean_std(std::vector<double> values);
/// (count below + 0.5 * count equal) / n * 100.
double midrank_percentile(double subject, const std::vector<double>& values);

void to_json(nlohmann::json& j, const StatsBundle& b);
void from_json(const nlohmann::json& j, StatsBundle& b);

enum class Locale { It, En };
std::string_view to_string(Locale l) noexcept;
/// "it" or "en". Throws Error{InvalidArgument}.
Locale parse_locale(std::string_view s);

/// Markdown report: header naming subject and comparison set, then one
/// section per metric. Values use two decimals. Labels are quoted.
std::string render_report(const StatsBundle& bundle, Locale locale);

/// Numeric tokens (digit runs with inner `.` or `,` separators), sorted.
std::vector<std::string> numerals(std::string_view text);

struct PolishedReport {
    std::string text;
    bool fallback = false;
    std::string fallback_reason; ///< empty, "gateway_error", "guardrail", "numerals", "empty_output"
};

/// Sends the markdown through the report_polish template. The completion is
/// shipped only if it passes check_neutrality and keeps every numeral of the
/// input; otherwise the input is returned with `fallback` set. A null gateway
/// returns the input without fallback.
PolishedReport polish_report(std::string_view markdown, llm::LlmGateway* gateway);

} // namespace legis::report
