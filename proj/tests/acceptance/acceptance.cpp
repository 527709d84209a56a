// Prints one PASS/FAIL line per acceptance criterion; exits non-zero on any failure.

#include "legis/core/error.hpp"
#include "legis/core/strings.hpp"
#include "legis/graph/graph_store.hpp"
#include "legis/ingest/corpus.hpp"
#include "legis/llm/gateway.hpp"
#include "legis/llm/guardrail.hpp"
#include "legis/monitor/monitor.hpp"
#include "legis/rag/pipeline.hpp"
#include "legis/report/report.hpp"
#include "legis/service/server.hpp"
#include "legis/text/metrics.hpp"
#include "legis/vector/hnsw.hpp"

#include "support/fixture_corpus.hpp"
#include "support/monitor_oracle.hpp"
#include "support/process.hpp"
#include "support/random_corpus.hpp"
#include "support/random_vectors.hpp"
#include "support/scripted_backend.hpp"

#include <httplib.h>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

using namespace legis;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Check {
public:
    void require(bool ok, const std::string& what)
    {
        if (!ok && failures_.size() < 5)
            failures_.push_back(what);
        if (!ok)
            ++failed_;
    }
    [[nodiscard]] Outcome outcome(std::string summary) const
    {
        if (failed_ == 0)
            return {true, std::move(summary)};
        std::string d = std::to_string(failed_) + " check(s) failed: " + join(failures_, "; ");
        return {false, d};
    }

private:
    std::vector<std::string> failures_;
    std::size_t failed_ = 0;
};

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int decimals = 3)
{
    std::ostringstream ss;
    ss.setf(std::ios::fixed);
    ss.precision(decimals);
    ss << v;
    return ss.str();
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 1. Readability formulas.

std::string random_text(std::mt19937_64& rng)
{
    static const std::vector<std::string> pool{
        "il",       "decreto",   "legge",      "che",     "disciplina", "procedendo", "contratti", "pubblica",
        "egli",     "amministrazione", "nazionale", "entra", "vigore",   "quando",     "ministro",  "sentito",
        "città",    "perché",    "dell'ente",  "regionale", "adottando", "norma",     "cui",       "dati"};
    std::uniform_int_distribution<std::size_t> word(0, pool.size() - 1);
    std::uniform_int_distribution<int> sentences(1, 6), length(1, 14), punct(0, 9);
    std::string out;
    const int n = sentences(rng);
    for (int s = 0; s < n; ++s) {
        const int w = length(rng);
        for (int i = 0; i < w; ++i) {
            std::string tok = pool[word(rng)];
            if (i == 0)
                tok[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(tok[0])));
            out += tok;
            if (i + 1 < w)
                out += punct(rng) == 0 ? ", " : " ";
        }
        out += ". ";
    }
    return out;
}

Outcome readability()
{
    Check c;
    c.require(text::gulpease("Il gatto dorme.") == 100.0, "gulpease('Il gatto dorme.') == 100");
    c.require(std::abs(text::flesch("Il gatto dorme.") - 62.79) <= 0.01, "flesch('Il gatto dorme.') ~ 62.79");
    c.require(text::gulpease("La legge stabilisce nuove regole per la tutela dei cittadini.") == 68.0,
              "gulpease(10-word fixture) == 68");

    std::mt19937_64 rng(20240601);
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        const auto t = random_text(rng);
        const auto a = text::profile(t);
        const auto b = text::profile(t + t);
        for (const auto& [x, y] : {std::pair{a.gulpease, b.gulpease}, std::pair{a.flesch, b.flesch},
                                   std::pair{a.gerund_ratio, b.gerund_ratio}, std::pair{a.adjective_ratio, b.adjective_ratio},
                                   std::pair{a.pronoun_ratio, b.pronoun_ratio},
                                   std::pair{a.embedding_index, b.embedding_index},
                                   std::pair{a.center_embedding_index, b.center_embedding_index}})
            worst = std::max(worst, std::abs(x - y));
        c.require(b.word_count == 2 * a.word_count, "word count doubles");
    }
    c.require(worst <= 1e-9, "scale invariance within 1e-9 (worst " + std::to_string(worst) + ")");
    return c.outcome("fixtures exact; 200 random texts, max deviation " + fmt(worst, 12));
}

// 2. In-force derivation.

Outcome in_force()
{
    Check c;
    const auto t0 = Clock::now();
    std::size_t queries = 0, max_laws = 0;
    for (std::uint64_t g = 0; g < 100; ++g) {
        const auto model = testing::random_corpus(1000 + g, {.min_laws = 1, .max_laws = 1000, .abrogation_rate = 0.3});
        max_laws = std::max(max_laws, model.laws.size());
        const auto store = testing::build_store(model);
        std::mt19937_64 rng(g);
        for (int d = 0; d < 10; ++d) {
            const auto date = testing::random_date(rng, 1985, 2030);
            ++queries;
            c.require(store.in_force_laws(date) == testing::oracle_in_force(model, date),
                      "graph " + std::to_string(g) + " at " + date.iso());
        }
    }
    const double s = seconds_since(t0);
    c.require(s < 10.0, "runtime " + fmt(s) + " s >= 10 s");
    return c.outcome(std::to_string(queries) + " queries on 100 graphs (max " + std::to_string(max_laws) +
                     " laws) match the temporal scan; " + fmt(s) + " s");
}

// 3. HNSW recall.

Outcome hnsw_recall()
{
    Check c;
    const auto t0 = Clock::now();
    const auto points = testing::random_points(7, 1000, 64);
    vector::HnswIndex index({.dimension = 64, .max_neighbors = 16, .ef_construction = 200, .seed = 42});
    for (const auto& [id, v] : points)
        index.insert(id, v);
    index.freeze();
    std::string problem;
    c.require(index.check_invariants(&problem), "invariants: " + problem);

    std::mt19937_64 rng(99);
    double recall50 = 0, recall_full = 0;
    for (int q = 0; q < 100; ++q) {
        const auto query = testing::random_unit_vector(rng, 64);
        const auto truth = testing::oracle_knn(points, query, 10);
        const std::set<std::string> expected(truth.begin(), truth.end());
        std::size_t hit50 = 0, hit_full = 0;
        for (const auto& h : index.search(query, 10, 50))
            hit50 += expected.contains(h.id);
        const auto exact = index.search(query, 10, index.size());
        for (const auto& h : exact)
            hit_full += expected.contains(h.id);
        recall50 += static_cast<double>(hit50) / 10.0;
        recall_full += static_cast<double>(hit_full) / 10.0;
    }
    recall50 /= 100.0;
    recall_full /= 100.0;
    const double s = seconds_since(t0);
    c.require(recall50 >= 0.9, "recall@10 at ef=50 is " + fmt(recall50));
    c.require(recall_full == 1.0, "recall@10 at ef=N is " + fmt(recall_full));
    c.require(s < 30.0, "runtime " + fmt(s) + " s >= 30 s");
    return c.outcome("recall@10 " + fmt(recall50) + " at ef=50, " + fmt(recall_full) + " at ef=1000; " + fmt(s) + " s");
}

// 4. Foundation ranking.

Outcome foundations()
{
    Check c;
    {
        graph::GraphStore g;
        const std::string X = "/akn/it/act/1950-01-01/10", Y = "/akn/it/act/1960-01-01/20";
        std::vector<std::string> ids;
        for (const auto& [n, target] : {std::pair{1, X}, std::pair{2, X}, std::pair{3, Y}}) {
            testing::ModelLaw l;
            l.published = Date(2000 + n, 1, 1);
            l.id = testing::model_law_id(l.published, n);
            l.preamble_targets = {target};
            g.upsert_law(testing::to_document(l));
            ids.push_back(l.id);
        }
        const auto r = rag::rank_foundations(g, ids);
        c.require(r.size() == 2 && r[0].target_id == X && r[0].citing_count == 2 &&
                      r[0].relative_frequency == 2.0 / 3.0 && r[1].target_id == Y && r[1].citing_count == 1 &&
                      r[1].relative_frequency == 1.0 / 3.0,
                  "worked example {L1,L2,L3} -> [(X,2,2/3),(Y,1,1/3)]");
    }
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto model = testing::random_corpus(5000 + seed, {.min_laws = 3, .max_laws = 150});
        const auto g = testing::build_store(model);
        std::mt19937_64 rng(seed);
        std::set<std::string> within;
        for (const auto& l : model.laws)
            if (std::bernoulli_distribution(0.4)(rng))
                within.insert(l.id);
        std::vector<std::string> ids(within.begin(), within.end());
        if (!ids.empty())
            ids.push_back(ids.front()); // duplicates count once
        const auto got = rag::rank_foundations(g, ids);
        const auto want = testing::oracle_foundations(model, within);
        bool same = got.size() == want.size();
        for (std::size_t i = 0; same && i < want.size(); ++i)
            same = got[i].target_id == want[i].first && got[i].citing_count == want[i].second &&
                   got[i].relative_frequency ==
                       static_cast<double>(want[i].second) / static_cast<double>(within.size()) &&
                   got[i].target_kind == (want[i].first.find('#') == std::string::npos ? graph::NodeKind::Law
                                                                                       : graph::NodeKind::Article);
        c.require(same, "random graph " + std::to_string(seed));
    }
    return c.outcome("worked example exact; 50 random graphs match the distinct-law recount");
}

// 5. End-to-end determinism.

class LoopbackServer {
public:
    explicit LoopbackServer(const service::ServiceContext& ctx) : server_(ctx)
    {
        port_ = server_.bind("127.0.0.1", 0);
        thread_ = std::thread([this] { server_.listen(); });
        while (!server_.running())
            std::this_thread::yield();
    }
    ~LoopbackServer()
    {
        server_.stop();
        thread_.join();
    }
    [[nodiscard]] int port() const { return port_; }

private:
    service::HttpServer server_;
    int port_ = 0;
    std::thread thread_;
};

Outcome end_to_end()
{
    Check c;
    const fs::path dir = fs::temp_directory_path() / "legis-acceptance-e2e";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string cli = LEGIS_CLI;
    const auto snap = (dir / "s.json").string(), idx = (dir / "s.hnsw").string();
    const auto ingest = testing::run(cli + " ingest --manifest " +
                                     testing::quote((testing::fixtures_dir() / "corpus" / "manifest.jsonl").string()) +
                                     " --snapshot " + testing::quote(snap) + " --index " + testing::quote(idx));
    c.require(ingest.exit_code == 0, "ingest exit code");

    const auto golden_landscape = slurp(fs::path(LEGIS_GOLDEN) / "landscape.json");
    const auto cmd = cli + " landscape --snapshot " + testing::quote(snap) + " --index " + testing::quote(idx) +
                     " --as-of 2025-12-31 --input " +
                     testing::quote("regolamentazione delle tecnologie di intelligenza artificiale");
    for (int run = 0; run < 3; ++run) {
        const auto r = testing::run(cmd);
        c.require(r.exit_code == 0 && r.out == golden_landscape, "legis landscape run " + std::to_string(run) + " == golden");
    }

    const auto request = slurp(fs::path(LEGIS_GOLDEN) / "draft_analyze.request.json");
    const auto golden_draft = slurp(fs::path(LEGIS_GOLDEN) / "draft_analyze.response.json");
    {
        const auto ctx = testing::fixture_context();
        LoopbackServer server(*ctx);
        httplib::Client client("127.0.0.1", server.port());
        client.set_read_timeout(60, 0);
        for (int run = 0; run < 3; ++run) {
            const auto r = client.Post("/api/drafts/analyze", request, "application/json");
            c.require(r && r->status == 200 && r->body == golden_draft,
                      "POST /api/drafts/analyze run " + std::to_string(run) + " == golden");
        }
    }
    fs::remove_all(dir);
    return c.outcome("landscape CLI and drafts/analyze API byte-equal to goldens over 3 runs each");
}

// 6. Guardrail.

std::string apply_op(const nlohmann::json& spec, const std::string& report)
{
    const auto op = spec.at("op").get<std::string>();
    if (op == "append")
        return report + "\n" + spec.at("text").get<std::string>() + "\n";
    if (op == "prepend")
        return spec.at("text").get<std::string>() + "\n" + report;
    if (op == "replace")
        return spec.at("text").get<std::string>();
    if (op == "truncate")
        return report.substr(0, report.size() / 2);
    if (op == "drop_numeral" || op == "alter_numeral") {
        // Locate the n-th numeral in reading order.
        std::vector<std::pair<std::size_t, std::size_t>> spans;
        for (std::size_t i = 0; i < report.size();) {
            if (!std::isdigit(static_cast<unsigned char>(report[i]))) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < report.size() &&
                   (std::isdigit(static_cast<unsigned char>(report[j])) ||
                    ((report[j] == '.' || report[j] == ',') && j + 1 < report.size() &&
                     std::isdigit(static_cast<unsigned char>(report[j + 1])))))
                ++j;
            spans.emplace_back(i, j - i);
            i = j;
        }
        const int n = spec.at("index").get<int>();
        const auto [pos, len] = spans.at(n < 0 ? spans.size() + static_cast<std::size_t>(n) : static_cast<std::size_t>(n));
        auto out = report;
        if (op == "drop_numeral")
            out.erase(pos, len);
        else
            out.replace(pos, len, "999.99");
        return out;
    }
    throw std::runtime_error("unknown op " + op);
}

Outcome guardrail()
{
    Check c;
    const auto ctx = testing::fixture_context();
    const service::Api api(*ctx);

    std::size_t shipped = 0;
    const auto ship = [&](const std::string& what, const service::ApiResponse& r) {
        if (r.status != 200) {
            c.require(false, what + " status " + std::to_string(r.status));
            return;
        }
        const auto j = nlohmann::json::parse(r.body);
        const auto verdict = llm::check_neutrality(j.at("report").get<std::string>());
        c.require(verdict.passed, what + " violates: " + join(verdict.violations, ","));
        ++shipped;
    };
    for (const auto& law : ctx->store().in_force_laws(Date(2030, 1, 1)))
        for (const auto* locale : {"it", "en"})
            ship(law + " " + locale,
                 api.handle({"POST", "/api/laws/" + law + "/report", {}, std::string(R"({"locale": ")") + locale + "\"}"}));
    ship("golden draft", api.handle({"POST", "/api/drafts/analyze", {},
                                     slurp(fs::path(LEGIS_GOLDEN) / "draft_analyze.request.json")}));
    for (const auto* locale : {"it", "en"})
        ship(std::string("draft fixture ") + locale,
             api.handle({"POST", "/api/drafts/analyze", {},
                         std::string(R"({"title": "Disciplina delle fonti rinnovabili", "text": "Testo.", "as_of": "2025-12-31", "locale": ")") +
                             locale + "\"}"}));

    // Adversarial completions for the polish step.
    const auto report_md = [&] {
        const auto j = nlohmann::json::parse(
            api.handle({"POST", "/api/laws//akn/it/act/2005-03-07/82/report", {}, "{}"}).body);
        return j.at("report").get<std::string>();
    }();
    std::size_t cases = 0, tripped = 0;
    std::istringstream lines(slurp(testing::fixtures_dir() / "adversarial" / "polish_completions.jsonl"));
    for (std::string line; std::getline(lines, line);) {
        if (trim(line).empty())
            continue;
        const auto spec = nlohmann::json::parse(line);
        auto backend = std::make_shared<testing::ScriptedBackend>();
        if (spec.at("op") == "error") {
            const auto code = spec.at("code").get<std::string>() == "GatewayError" ? ErrorCode::GatewayError
                                                                                   : ErrorCode::BackendUnavailable;
            backend->fail_always(code);
        } else {
            backend->push_text(apply_op(spec, report_md));
        }
        llm::LlmGateway gw(backend, testing::fast_retry_config());
        const auto r = report::polish_report(report_md, &gw);
        ++cases;
        const bool ok = r.fallback && r.text == report_md;
        tripped += ok;
        c.require(ok, "adversarial " + spec.at("name").get<std::string>() + " shipped");
    }
    c.require(cases > 0, "no adversarial fixtures");
    return c.outcome(std::to_string(shipped) + " shipped reports neutral; " + std::to_string(tripped) + "/" +
                     std::to_string(cases) + " adversarial completions fell back");
}

// 7. Ingestion robustness.

std::string synthetic_act(int n)
{
    const Date d(1995 + n % 30, 1 + n % 12, 1 + n % 28);
    const auto id = testing::model_law_id(d, 500 + n);
    return R"(<?xml version="1.0" encoding="UTF-8"?>
<akomaNtoso xmlns="http://docs.oasis-open.org/legaldocml/ns/akn/3.0"><act name="act">
<meta><identification source="#s"><FRBRWork><FRBRuri value=")" + id + R"("/><FRBRdate date=")" + d.iso() +
           R"(" name="publication"/></FRBRWork></identification></meta>
<preface><p><docTitle>Disposizioni sintetiche numero )" + std::to_string(n) + R"(</docTitle></p></preface>
<preamble><p>Visto il <ref href="/akn/it/act/1988-08-23/400#art_14">articolo 14</ref>;</p></preamble>
<body><article eId="art_1"><num>Art. 1.</num><heading>Oggetto</heading>
<paragraph><content><p>La presente legge disciplina la materia numero )" + std::to_string(n) + R"(.</p></content></paragraph>
</article></body></act></akomaNtoso>
)";
}

Outcome ingestion()
{
    Check c;
    const fs::path dir = fs::temp_directory_path() / "legis-acceptance-ingest";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::string manifest;
    const auto add = [&](const std::string& name, const std::string& content) {
        std::ofstream(dir / name, std::ios::binary) << content;
        manifest += R"({"path": ")" + name + R"(", "format": "akn-xml"})" + "\n";
    };
    // 90 valid documents: the 10 shipped fixtures plus 80 synthetic acts.
    for (const auto& e : fs::directory_iterator(testing::fixtures_dir() / "corpus"))
        if (e.path().extension() == ".xml")
            add(e.path().filename().string(), slurp(e.path()));
    for (int i = 0; i < 80; ++i)
        add("syn_" + std::to_string(i) + ".xml", synthetic_act(i));
    // 10 corrupt ones.
    const auto good = synthetic_act(0);
    add("bad_truncated.xml", good.substr(0, good.size() / 2));
    add("bad_empty.xml", "");
    add("bad_binary.xml", std::string("\x00\x01\x02\xff\xfe", 5));
    add("bad_no_id.xml", "<akomaNtoso><act><body><article eId=\"art_1\"><num>Art. 1</num></article></body></act></akomaNtoso>");
    add("bad_duplicate.xml", good);
    add("bad_mismatched.xml", "<akomaNtoso><act></akomaNtoso></act>");
    add("bad_not_xml.xml", "Art. 1 Questo non è XML.");
    add("bad_bad_date.xml", [&] {
        auto s = good;
        const auto p = s.find("date=\"");
        s.replace(p + 6, 10, "2020-13-45");
        return s;
    }());
    add("bad_entity.xml", "<akomaNtoso><act>&undefined;</act></akomaNtoso>");
    manifest += R"({"path": "bad_missing.xml", "format": "akn-xml"})" "\n";
    std::ofstream(dir / "manifest.jsonl") << manifest;

    const auto scan = ingest::scan_corpus(dir / "manifest.jsonl");
    c.require(scan.stats == ingest::IngestStats{90, 10, 0},
              "stats {" + std::to_string(scan.stats.parsed) + "," + std::to_string(scan.stats.failed) + "," +
                  std::to_string(scan.stats.skipped) + "} != {90,10,0}");
    c.require(scan.documents.size() == 90, "90 documents emitted");
    c.require(scan.issues.size() == 10, "10 issues reported");

    graph::GraphStore store;
    graph::ingest_documents(store, scan.documents);
    std::size_t laws = 0;
    for (const auto& [id, n] : store.nodes())
        laws += n.kind == graph::NodeKind::Law && !n.properties.stub;
    c.require(laws == 90, "90 non-stub laws in graph");

    std::size_t round_trips = 0;
    const auto round_trip = [&](const graph::GraphStore& g, const std::string& what) {
        const auto path = dir / "rt.snapshot.json";
        graph::save_snapshot(g, path);
        c.require(graph::load_snapshot(path) == g, "snapshot round trip: " + what);
        ++round_trips;
    };
    round_trip(store, "robustness corpus");
    round_trip(testing::fixture_store(), "fixture corpus");
    for (std::uint64_t s = 0; s < 10; ++s)
        round_trip(testing::build_store(testing::random_corpus(900 + s)), "random graph " + std::to_string(s));
    fs::remove_all(dir);
    return c.outcome("100-file manifest with 10 corrupt -> stats {90,10,0}; " + std::to_string(round_trips) +
                     " snapshot round trips equal");
}

// 8. Monitoring.

Outcome monitoring()
{
    Check c;
    const std::array metrics{monitor::SeriesMetric::LawsEnacted, monitor::SeriesMetric::InForceCount,
                             monitor::SeriesMetric::AvgOutgoingCitations, monitor::SeriesMetric::NewCitations};
    std::size_t series = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto model = testing::random_corpus(7000 + seed, {.min_laws = 1, .max_laws = 300});
        const auto store = testing::build_store(model);
        const auto reloaded = graph::GraphStore::from_snapshot(store.to_snapshot());
        for (const auto m : metrics)
            for (const auto g : {monitor::Granularity::Year, monitor::Granularity::Month}) {
                const Date from(1998, 5, 17), to(g == monitor::Granularity::Year ? Date(2026, 2, 1) : Date(2003, 8, 9));
                const auto ts = monitor::timeseries(store, m, g, from, to);
                const auto want = testing::oracle_series(model, m, g, from, to);
                bool same = ts.points.size() == want.size();
                for (std::size_t i = 0; same && i < want.size(); ++i)
                    same = std::abs(ts.points[i].value - want[i]) <= 1e-12;
                c.require(same, std::string(monitor::to_string(m)) + "/" + std::string(monitor::to_string(g)) +
                                    " seed " + std::to_string(seed));
                const auto csv = monitor::export_csv(ts);
                c.require(csv == monitor::export_csv(monitor::timeseries(reloaded, m, g, from, to)) &&
                              csv == monitor::export_csv(ts),
                          "CSV bytes differ for seed " + std::to_string(seed));
                ++series;
            }
    }
    return c.outcome(std::to_string(series) + " series on 20 random graphs match brute-force recounts; CSV byte-stable");
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"readability formulas", readability},
        {"in-force oracle equivalence", in_force},
        {"HNSW recall", hnsw_recall},
        {"foundation ranking oracle", foundations},
        {"end-to-end mock determinism", end_to_end},
        {"guardrail", guardrail},
        {"ingestion robustness", ingestion},
        {"monitoring oracle", monitoring},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << i + 1 << "] " << criteria[i].first << ": " << o.detail
                  << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
              << " acceptance criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
