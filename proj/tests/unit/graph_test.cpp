#include "legis/graph/graph_store.hpp"
#include "legis/ingest/corpus.hpp"

#include "support/expect_error.hpp"
#include "support/random_corpus.hpp"

#include <gtest/gtest.h>

using namespace legis;
using namespace legis::graph;
using legis::testing::expect_error;

namespace {

ingest::LawDocument law(const std::string& id, Date pub, int articles = 0)
{
    ingest::LawDocument d;
    d.law_id = id;
    d.title = "Legge " + id;
    d.publication_date = pub;
    d.full_text = "Testo.";
    for (int i = 1; i <= articles; ++i) {
        ingest::ArticleUnit a;
        a.number = std::to_string(i);
        a.article_id = ingest::make_article_id(id, a.number);
        a.text = "Articolo.";
        d.articles.push_back(a);
    }
    return d;
}

ingest::RawReference ref(const std::string& src, const std::string& dst, ingest::RefKind kind)
{
    return {src, dst, kind, false, dst};
}

const std::string A = "/akn/it/act/2000-01-01/1";
const std::string B = "/akn/it/act/2010-01-01/2";
const std::string X = "/akn/it/act/1950-01-01/10";
const std::string Y = "/akn/it/act/1960-01-01/20";

} // namespace

TEST(GraphStore, UpsertCountsAndStub)
{
    auto d = law(A, Date(2000, 1, 1), 2);
    d.preamble_refs.push_back(ref(A, X, ingest::RefKind::Preamble));
    GraphStore g;
    g.upsert_law(d);
    EXPECT_EQ(g.node_count(), 4u); // law, 2 articles, stub
    std::size_t contains = 0, cites = 0;
    for (const auto& [key, e] : g.edges())
        (e.kind == EdgeKind::Contains ? contains : cites) += 1;
    EXPECT_EQ(contains, 2u);
    EXPECT_EQ(cites, 1u);
    EXPECT_TRUE(g.node(X).properties.stub);
    EXPECT_EQ(g.node(A).properties.title, "Legge " + A);
    EXPECT_TRUE(g.check_integrity());

    g.upsert_law(d);
    EXPECT_EQ(g.node_count(), 4u);
    EXPECT_EQ(g.edge_count(), 3u);
}

TEST(GraphStore, ExistingTargetNoStubAndStubReplaced)
{
    GraphStore g;
    auto b = law(B, Date(2010, 1, 1));
    b.preamble_refs.push_back(ref(B, A, ingest::RefKind::Preamble));
    g.upsert_law(b);
    EXPECT_TRUE(g.node(A).properties.stub);
    g.upsert_law(law(A, Date(2000, 1, 1)));
    EXPECT_FALSE(g.node(A).properties.stub);
    EXPECT_EQ(g.node_count(), 2u);
    EXPECT_EQ(g.in_edges(A).size(), 1u);
}

TEST(GraphStore, Abrogation)
{
    GraphStore g;
    g.upsert_law(law(A, Date(2000, 1, 1), 1));
    g.upsert_law(law(B, Date(2010, 1, 1)));
    g.add_abrogation(B, A, Date(2010, 1, 1));
    g.add_abrogation(B, A, Date(2010, 1, 1));
    std::size_t n = 0;
    for (const auto& [key, e] : g.edges())
        if (e.kind == EdgeKind::Abrogates) {
            ++n;
            EXPECT_EQ(e.properties.effective_date, std::optional<Date>(Date(2010, 1, 1)));
        }
    EXPECT_EQ(n, 1u);
    expect_error(ErrorCode::KindMismatch, [&] { g.add_abrogation(B, A + "#art_1", Date(2010, 1, 1)); });
    expect_error(ErrorCode::NodeNotFound, [&] { g.add_abrogation(B, "/akn/it/act/1999-01-01/9", Date(2010, 1, 1)); });
}

TEST(GraphStore, InForceWorkedExample)
{
    GraphStore g;
    g.upsert_law(law(A, Date(2000, 1, 1)));
    g.upsert_law(law(B, Date(2010, 1, 1)));
    g.add_abrogation(B, A, Date(2010, 1, 1));
    EXPECT_EQ(g.in_force_laws(Date(2005, 1, 1)), std::vector<std::string>{A});
    EXPECT_EQ(g.in_force_laws(Date(2015, 1, 1)), std::vector<std::string>{B});
    EXPECT_TRUE(GraphStore().in_force_laws(Date(2015, 1, 1)).empty());
}

TEST(GraphStore, InForceMatchesModelOracle)
{
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto model = legis::testing::random_corpus(seed);
        const auto g = legis::testing::build_store(model);
        std::mt19937_64 rng(seed * 7919);
        for (int i = 0; i < 5; ++i) {
            const auto d = legis::testing::random_date(rng, 1985, 2030);
            ASSERT_EQ(g.in_force_laws(d), legis::testing::oracle_in_force(model, d)) << "seed " << seed << " " << d.iso();
        }
    }
}

TEST(GraphStore, OutgoingRefsFilter)
{
    auto d = law(A, Date(2000, 1, 1), 2);
    d.preamble_refs.push_back(ref(A, X, ingest::RefKind::Preamble));
    d.body_refs.push_back(ref(A + "#art_1", Y, ingest::RefKind::Body));
    d.body_refs.push_back(ref(A + "#art_2", X + "#art_3", ingest::RefKind::Body));
    GraphStore g;
    g.upsert_law(d);
    EXPECT_EQ(g.outgoing_refs(A, ingest::RefKind::Preamble).size(), 1u);
    EXPECT_EQ(g.outgoing_refs(A).size(), 3u);
    EXPECT_EQ(g.owning_law(A + "#art_2"), A);
    EXPECT_EQ(g.owning_law(X + "#art_3"), X);
    expect_error(ErrorCode::NodeNotFound, [&] { (void)g.outgoing_refs("/akn/it/act/1999-01-01/9"); });
}

TEST(GraphStore, TopCited)
{
    const std::string L1 = "/akn/it/act/2001-01-01/1", L2 = "/akn/it/act/2002-01-01/2", L3 = "/akn/it/act/2003-01-01/3";
    GraphStore g;
    for (const auto& [id, target] : {std::pair{L1, X}, std::pair{L2, X}, std::pair{L3, Y}}) {
        auto d = law(id, Date(2001, 1, 1));
        d.preamble_refs.push_back(ref(id, target, ingest::RefKind::Preamble));
        g.upsert_law(d);
    }
    using R = std::vector<std::pair<std::string, std::size_t>>;
    EXPECT_EQ(g.top_cited(ingest::RefKind::Preamble, std::nullopt, 2), (R{{X, 2}, {Y, 1}}));
    EXPECT_EQ(g.top_cited(ingest::RefKind::Preamble, std::set<std::string>{L1}, 2), (R{{X, 1}}));
    EXPECT_EQ(g.top_cited(std::nullopt, std::nullopt, 5).size(), 2u);
}

TEST(GraphStore, FrozenRejectsWrites)
{
    GraphStore g;
    g.freeze();
    expect_error(ErrorCode::Frozen, [&] { g.upsert_law(law(A, Date(2000, 1, 1))); });
    expect_error(ErrorCode::Frozen, [&] { g.ensure_law(A); });
}

TEST(Snapshot, RoundTripRandomGraph)
{
    const auto model = legis::testing::random_corpus(99, {.min_laws = 100, .max_laws = 100});
    const auto g = legis::testing::build_store(model);
    ASSERT_GE(g.node_count(), 100u);
    const auto bytes = serialize_snapshot(g.to_snapshot());
    const auto back = GraphStore::from_snapshot(parse_snapshot(bytes));
    EXPECT_EQ(back, g);
    EXPECT_EQ(serialize_snapshot(back.to_snapshot()), bytes);
}

TEST(Snapshot, EmptyAndVersion)
{
    const GraphStore empty;
    EXPECT_EQ(GraphStore::from_snapshot(parse_snapshot(serialize_snapshot(empty.to_snapshot()))), empty);
    auto snap = empty.to_snapshot();
    snap.format_version = 99;
    const auto bytes = serialize_snapshot(snap);
    expect_error(ErrorCode::VersionMismatch, [&] { (void)parse_snapshot(bytes); });
    expect_error(ErrorCode::CorruptSnapshot, [] { (void)parse_snapshot("{not json"); });
}

TEST(Snapshot, FixtureCorpusRoundTrip)
{
    const auto scan = ingest::scan_corpus(std::filesystem::path(LEGIS_FIXTURES) / "corpus" / "manifest.jsonl");
    GraphStore g;
    ingest_documents(g, scan.documents);
    const auto back = GraphStore::from_snapshot(parse_snapshot(serialize_snapshot(g.to_snapshot())));
    EXPECT_EQ(back, g);
    EXPECT_TRUE(back.check_integrity());
    // 28/2011 is repealed from 2021-12-15.
    const auto before = g.in_force_laws(Date(2021, 12, 14));
    const auto after = g.in_force_laws(Date(2021, 12, 15));
    EXPECT_EQ(before.size(), after.size() + 1);
    EXPECT_EQ(std::count(after.begin(), after.end(), "/akn/it/act/2011-03-03/28"), 0);
}
