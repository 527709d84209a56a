#include "legis/llm/gateway.hpp"
#include "legis/llm/guardrail.hpp"
#include "legis/report/report.hpp"
#include "legis/text/metrics.hpp"

#include "support/expect_error.hpp"
#include "support/scripted_backend.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace legis;
using namespace legis::report;
using legis::testing::expect_error;
using legis::testing::ScriptedBackend;

namespace {

text::ReadabilityProfile with_gulpease(double g)
{
    text::ReadabilityProfile p;
    p.gulpease = g;
    return p;
}

StatsBundle sample_bundle()
{
    return comparison_stats(text::profile("Il decreto, che disciplina i contratti, entra in vigore."),
                            {text::profile("Il gatto dorme."),
                             text::profile("La legge stabilisce nuove regole per la tutela dei cittadini."),
                             text::profile("Egli procede adottando le misure necessarie.")},
                            "Decreto di prova", "leggi di prova");
}

} // namespace

TEST(ComparisonStats, HandComputed)
{
    const auto b = comparison_stats(with_gulpease(60), {with_gulpease(40), with_gulpease(60)});
    const auto& g = b.at(Metric::Gulpease);
    EXPECT_DOUBLE_EQ(g.set_mean, 50.0);
    EXPECT_DOUBLE_EQ(g.set_std, 10.0);
    EXPECT_DOUBLE_EQ(g.z_score, 1.0);
    EXPECT_DOUBLE_EQ(g.percentile, 75.0);
    EXPECT_EQ(b.set_size, 2u);
    EXPECT_EQ(b.metrics.size(), kAllMetrics.size());
}

TEST(ComparisonStats, DegenerateSet)
{
    const auto p = text::profile("Il gatto dorme.");
    const auto b = comparison_stats(p, {p, p, p});
    for (const auto& m : b.metrics) {
        EXPECT_DOUBLE_EQ(m.z_score, 0.0) << to_string(m.metric);
        EXPECT_DOUBLE_EQ(m.percentile, 50.0) << to_string(m.metric);
        EXPECT_DOUBLE_EQ(m.set_std, 0.0);
    }
    expect_error(ErrorCode::EmptyComparisonSet, [&] { (void)comparison_stats(p, {}); });
}

TEST(ComparisonStats, PermutationInvariant)
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0, 100);
    std::vector<text::ReadabilityProfile> set;
    for (int i = 0; i < 40; ++i)
        set.push_back(with_gulpease(u(rng)));
    const auto subject = with_gulpease(u(rng));
    const auto reference = comparison_stats(subject, set);
    for (int i = 0; i < 10; ++i) {
        std::shuffle(set.begin(), set.end(), rng);
        EXPECT_EQ(comparison_stats(subject, set), reference);
    }
}

TEST(ComparisonStats, MatchesDirectFormulas)
{
    const std::vector<double> xs{3, 7, 7, 19};
    const auto [mean, sd] = mean_std(xs);
    EXPECT_DOUBLE_EQ(mean, 9.0);
    EXPECT_DOUBLE_EQ(sd, 6.0); // deviations -6,-2,-2,10 -> var 36
    EXPECT_DOUBLE_EQ(midrank_percentile(7, xs), 50.0);
    EXPECT_DOUBLE_EQ(midrank_percentile(1, xs), 0.0);
    EXPECT_DOUBLE_EQ(midrank_percentile(20, xs), 100.0);
}

TEST(StatsBundle, JsonRoundTrip)
{
    const auto b = sample_bundle();
    const nlohmann::json j = b;
    const auto back = j.get<StatsBundle>();
    EXPECT_EQ(back.subject_label, b.subject_label);
    EXPECT_EQ(back.set_size, b.set_size);
    ASSERT_EQ(back.metrics.size(), b.metrics.size());
    for (std::size_t i = 0; i < b.metrics.size(); ++i)
        EXPECT_NEAR(back.metrics[i].z_score, b.metrics[i].z_score, 1e-6);
}

TEST(Render, LocalesShareNumbers)
{
    const auto b = sample_bundle();
    const auto it = render_report(b, Locale::It);
    const auto en = render_report(b, Locale::En);
    EXPECT_NE(it, en);
    EXPECT_EQ(numerals(it), numerals(en));
    EXPECT_EQ(it.rfind("# ", 0), 0u);
    EXPECT_NE(it.find("\"Decreto di prova\""), std::string::npos);
    EXPECT_EQ(render_report(b, Locale::It), it);
}

TEST(Render, PassesGuardrail)
{
    auto b = sample_bundle();
    b.subject_label = "Disposizioni su cui si raccomanda prudenza";
    for (const auto loc : {Locale::It, Locale::En})
        EXPECT_TRUE(llm::check_neutrality(render_report(b, loc)).passed);
}

TEST(Render, NoNegativeZero)
{
    auto b = sample_bundle();
    b.metrics[0].z_score = -0.001;
    EXPECT_EQ(render_report(b, Locale::En).find("-0.00"), std::string::npos);
}

TEST(Numerals, Extraction)
{
    EXPECT_EQ(numerals("valori 1.50, 68 e 3,2; anno 2024."), (std::vector<std::string>{"1.50", "2024", "3,2", "68"}));
    EXPECT_TRUE(numerals("nessun numero").empty());
}

TEST(Polish, IdentityMockShipsInput)
{
    llm::LlmGateway gw(std::make_shared<llm::MockBackend>());
    const auto md = render_report(sample_bundle(), Locale::It);
    const auto r = polish_report(md, &gw);
    EXPECT_EQ(r.text, md);
    EXPECT_FALSE(r.fallback);
    EXPECT_FALSE(polish_report(md, nullptr).fallback);
}

TEST(Polish, FallbackReasons)
{
    const auto md = render_report(sample_bundle(), Locale::It);
    auto backend = std::make_shared<ScriptedBackend>();
    llm::LlmGateway gw(backend, legis::testing::fast_retry_config());

    backend->push_text(md + "\nSi raccomanda di semplificare il testo.\n");
    auto r = polish_report(md, &gw);
    EXPECT_TRUE(r.fallback);
    EXPECT_EQ(r.fallback_reason, "guardrail");
    EXPECT_EQ(r.text, md);

    auto dropped = md;
    const auto first = numerals(md).front();
    dropped.erase(dropped.find(first), first.size());
    backend->push_text(dropped);
    r = polish_report(md, &gw);
    EXPECT_EQ(r.fallback_reason, "numerals");

    backend->push_text("   ");
    EXPECT_EQ(polish_report(md, &gw).fallback_reason, "empty_output");

    backend->push_error(ErrorCode::GatewayError);
    EXPECT_EQ(polish_report(md, &gw).fallback_reason, "gateway_error");

    backend->push_text("Versione riformulata.\n" + md);
    r = polish_report(md, &gw);
    EXPECT_FALSE(r.fallback);
    EXPECT_EQ(r.text.rfind("Versione riformulata.", 0), 0u);
}
