#include "legis/report/report.hpp"

#include "legis/core/error.hpp"
#include "legis/core/strings.hpp"
#include "legis/llm/gateway.hpp"
#include "legis/llm/guardrail.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace legis::report {

using nlohmann::json;

std::string_view to_string(Metric m) noexcept
{
    switch (m) {
    case Metric::AvgWordLength: return "avg_word_length";
    case Metric::AvgSentenceLength: return "avg_sentence_length";
    case Metric::GerundRatio: return "gerund_ratio";
    case Metric::AdjectiveRatio: return "adjective_ratio";
    case Metric::PronounRatio: return "pronoun_ratio";
    case Metric::Flesch: return "flesch";
    case Metric::Gulpease: return "gulpease";
    case Metric::EmbeddingIndex: return "embedding_index";
    case Metric::CenterEmbeddingIndex: return "center_embedding_index";
    }
    return "unknown";
}

namespace {

Metric parse_metric(std::string_view s)
{
    for (Metric m : kAllMetrics)
        if (to_string(m) == s)
            return m;
    throw Error(ErrorCode::InvalidArgument, "unknown metric: " + std::string(s));
}

} // namespace

double metric_value(const text::ReadabilityProfile& p, Metric m) noexcept
{
    switch (m) {
    case Metric::AvgWordLength: return p.avg_word_length;
    case Metric::AvgSentenceLength: return p.avg_sentence_length;
    case Metric::GerundRatio: return p.gerund_ratio;
    case Metric::AdjectiveRatio: return p.adjective_ratio;
    case Metric::PronounRatio: return p.pronoun_ratio;
    case Metric::Flesch: return p.flesch;
    case Metric::Gulpease: return p.gulpease;
    case Metric::EmbeddingIndex: return p.embedding_index;
    case Metric::CenterEmbeddingIndex: return p.center_embedding_index;
    }
    return 0;
}

const MetricStats& StatsBundle::at(Metric m) const
{
    for (const auto& s : metrics)
        if (s.metric == m)
            return s;
    throw Error(ErrorCode::InvalidArgument, "metric not in bundle: " + std::string(to_string(m)));
}

std::pair<double, double> mean_std(std::vector<double> values)
{
    if (values.empty())
        throw Error(ErrorCode::EmptyComparisonSet, "no values");
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double sum = 0;
    for (double v : values)
        sum += v;
    const double mean = sum / n;
    if (values.front() == values.back())
        return {values.front(), 0.0};
    double sq = 0;
    for (double v : values)
        sq += (v - mean) * (v - mean);
    return {mean, std::sqrt(sq / n)};
}

double midrank_percentile(double subject, const std::vector<double>& values)
{
    if (values.empty())
        throw Error(ErrorCode::EmptyComparisonSet, "no values");
    double below = 0, equal = 0;
    for (double v : values) {
        if (v < subject)
            below += 1;
        else if (v == subject)
            equal += 1;
    }
    return (below + 0.5 * equal) / static_cast<double>(values.size()) * 100.0;
}

StatsBundle comparison_stats(const text::ReadabilityProfile& subject,
                             const std::vector<text::ReadabilityProfile>& others, std::string subject_label,
                             std::string set_descriptor)
{
    if (others.empty())
        throw Error(ErrorCode::EmptyComparisonSet, "comparison set is empty");
    StatsBundle b;
    b.subject_label = std::move(subject_label);
    b.set_descriptor = std::move(set_descriptor);
    b.set_size = others.size();
    for (Metric m : kAllMetrics) {
        std::vector<double> values;
        values.reserve(others.size());
        for (const auto& p : others)
            values.push_back(metric_value(p, m));
        MetricStats s;
        s.metric = m;
        s.subject_value = metric_value(subject, m);
        std::tie(s.set_mean, s.set_std) = mean_std(values);
        s.z_score = s.set_std == 0 ? 0.0 : (s.subject_value - s.set_mean) / s.set_std;
        s.percentile = midrank_percentile(s.subject_value, values);
        b.metrics.push_back(s);
    }
    return b;
}

void to_json(json& j, const StatsBundle& b)
{
    json metrics = json::array();
    for (const auto& s : b.metrics) {
        metrics.push_back({{"metric", to_string(s.metric)},
                           {"subject_value", round_to(s.subject_value)},
                           {"set_mean", round_to(s.set_mean)},
                           {"set_std", round_to(s.set_std)},
                           {"z_score", round_to(s.z_score)},
                           {"percentile", round_to(s.percentile)}});
    }
    j = json{{"subject_label", b.subject_label},
             {"set_descriptor", b.set_descriptor},
             {"set_size", b.set_size},
             {"metrics", metrics}};
}

void from_json(const json& j, StatsBundle& b)
{
    b.subject_label = j.at("subject_label").get<std::string>();
    b.set_descriptor = j.at("set_descriptor").get<std::string>();
    b.set_size = j.at("set_size").get<std::size_t>();
    b.metrics.clear();
    for (const auto& m : j.at("metrics")) {
        MetricStats s;
        s.metric = parse_metric(m.at("metric").get<std::string>());
        s.subject_value = m.at("subject_value").get<double>();
        s.set_mean = m.at("set_mean").get<double>();
        s.set_std = m.at("set_std").get<double>();
        s.z_score = m.at("z_score").get<double>();
        s.percentile = m.at("percentile").get<double>();
        b.metrics.push_back(s);
    }
}

std::string_view to_string(Locale l) noexcept
{
    return l == Locale::It ? "it" : "en";
}

Locale parse_locale(std::string_view s)
{
    if (s == "it")
        return Locale::It;
    if (s == "en")
        return Locale::En;
    throw Error(ErrorCode::InvalidArgument, "locale must be it or en, got " + std::string(s));
}

namespace {

std::string fixed2(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    std::string s = buf;
    if (s == "-0.00")
        s = "0.00";
    return s;
}

std::string quote_label(std::string_view label)
{
    std::string out = "\"";
    for (char c : collapse_whitespace(label))
        out.push_back(c == '"' ? '\'' : c);
    out.push_back('"');
    return out;
}

struct Labels {
    std::string_view title, subject, set, size_unit, value, mean, std_dev, z, percentile;
};

constexpr Labels kItalian{"Rapporto sulla qualità linguistica", "Testo analizzato", "Insieme di confronto",
                          "testi", "Valore", "Media dell'insieme", "deviazione standard", "Punteggio z",
                          "Percentile nell'insieme"};
constexpr Labels kEnglish{"Linguistic quality report", "Analyzed text", "Comparison set", "texts", "Value",
                          "Set mean", "standard deviation", "z-score", "Percentile within the set"};

std::string_view metric_title(Metric m, Locale l)
{
    const bool it = l == Locale::It;
    switch (m) {
    case Metric::AvgWordLength: return it ? "Lunghezza media delle parole (lettere)" : "Average word length (letters)";
    case Metric::AvgSentenceLength: return it ? "Lunghezza media delle frasi (parole)" : "Average sentence length (words)";
    case Metric::GerundRatio: return it ? "Quota di gerundi" : "Gerund ratio";
    case Metric::AdjectiveRatio: return it ? "Quota di aggettivi" : "Adjective ratio";
    case Metric::PronounRatio: return it ? "Quota di pronomi" : "Pronoun ratio";
    case Metric::Flesch: return it ? "Indice di leggibilità Flesch" : "Flesch Reading Ease";
    case Metric::Gulpease: return it ? "Indice Gulpease" : "Gulpease index";
    case Metric::EmbeddingIndex: return it ? "Indice di subordinazione (embedding)" : "Embedding index";
    case Metric::CenterEmbeddingIndex:
        return it ? "Indice di subordinazione centrale (center embedding)" : "Center embedding index";
    }
    return "";
}

} // namespace

std::string render_report(const StatsBundle& bundle, Locale locale)
{
    const Labels& L = locale == Locale::It ? kItalian : kEnglish;
    std::string out;
    out += "# ";
    out += L.title;
    out += "\n\n";
    out += "- ";
    out += L.subject;
    out += ": " + quote_label(bundle.subject_label.empty() ? "-" : bundle.subject_label) + "\n";
    out += "- ";
    out += L.set;
    out += ": " + quote_label(bundle.set_descriptor.empty() ? "-" : bundle.set_descriptor) + " (" +
           std::to_string(bundle.set_size) + " " + std::string(L.size_unit) + ")\n";
    for (const auto& s : bundle.metrics) {
        out += "\n## ";
        out += metric_title(s.metric, locale);
        out += "\n\n";
        out += "- " + std::string(L.value) + ": " + fixed2(s.subject_value) + "\n";
        out += "- " + std::string(L.mean) + ": " + fixed2(s.set_mean) + " (" + std::string(L.std_dev) + " " +
               fixed2(s.set_std) + ")\n";
        out += "- " + std::string(L.z) + ": " + fixed2(s.z_score) + "\n";
        out += "- " + std::string(L.percentile) + ": " + fixed2(s.percentile) + "\n";
    }
    return out;
}

std::vector<std::string> numerals(std::string_view text)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    const auto digit = [&](std::size_t k) { return k < text.size() && text[k] >= '0' && text[k] <= '9'; };
    while (i < text.size()) {
        if (!digit(i)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (true) {
            while (digit(j))
                ++j;
            if (j < text.size() && (text[j] == '.' || text[j] == ',') && digit(j + 1))
                ++j;
            else
                break;
        }
        out.emplace_back(text.substr(i, j - i));
        i = j;
    }
    std::sort(out.begin(), out.end());
    return out;
}

PolishedReport polish_report(std::string_view markdown, llm::LlmGateway* gateway)
{
    PolishedReport fallback{std::string(markdown), true, {}};
    if (!gateway)
        return {std::string(markdown), false, {}};
    std::string polished;
    try {
        llm::ChatRequest req;
        req.template_id = llm::TemplateId::ReportPolish;
        req.variables["report"] = std::string(markdown);
        req.max_tokens = 2048;
        polished = gateway->chat(req);
    } catch (const Error&) {
        fallback.fallback_reason = "gateway_error";
        return fallback;
    }
    if (trim(polished).empty()) {
        fallback.fallback_reason = "empty_output";
        return fallback;
    }
    if (!llm::check_neutrality(polished).passed) {
        fallback.fallback_reason = "guardrail";
        return fallback;
    }
    const auto want = numerals(markdown);
    const auto have = numerals(polished);
    if (!std::includes(have.begin(), have.end(), want.begin(), want.end())) {
        fallback.fallback_reason = "numerals";
        return fallback;
    }
    return {std::move(polished), false, {}};
}

} // namespace legis::report
