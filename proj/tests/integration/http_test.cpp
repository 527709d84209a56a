#include "legis/service/server.hpp"

#include "support/fixture_corpus.hpp"
#include "support/golden.hpp"

#include <gtest/gtest.h>
#include <httplib.h>
#include <json.hpp>

#include <thread>

using namespace legis;

namespace {

class HttpTest : public ::testing::Test {
protected:
    static void SetUpTestSuite()
    {
        ctx_ = legis::testing::fixture_context("http://localhost:5173").release();
        server_ = new service::HttpServer(*ctx_);
        port_ = server_->bind("127.0.0.1", 0);
        thread_ = new std::thread([] { server_->listen(); });
        while (!server_->running())
            std::this_thread::yield();
    }
    static void TearDownTestSuite()
    {
        server_->stop();
        thread_->join();
        delete thread_;
        delete server_;
        delete ctx_;
    }
    static httplib::Client client()
    {
        httplib::Client c("127.0.0.1", port_);
        c.set_read_timeout(30, 0);
        return c;
    }

    static service::ServiceContext* ctx_;
    static service::HttpServer* server_;
    static std::thread* thread_;
    static int port_;
};

service::ServiceContext* HttpTest::ctx_ = nullptr;
service::HttpServer* HttpTest::server_ = nullptr;
std::thread* HttpTest::thread_ = nullptr;
int HttpTest::port_ = 0;

} // namespace

TEST_F(HttpTest, Health)
{
    auto c = client();
    const auto r = c.Get("/healthz");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 200);
    const auto j = nlohmann::json::parse(r->body);
    EXPECT_EQ(j["status"], "ok");
    EXPECT_EQ(j["llm_mode"], "mock");
    EXPECT_EQ(r->get_header_value("x-api-version"), "1");
    EXPECT_EQ(r->get_header_value("Access-Control-Allow-Origin"), "http://localhost:5173");
}

TEST_F(HttpTest, DraftAnalyzeGolden)
{
    const auto request = legis::testing::slurp(std::filesystem::path(LEGIS_GOLDEN) / "draft_analyze.request.json");
    auto c = client();
    const auto r = c.Post("/api/drafts/analyze", request, "application/json");
    ASSERT_TRUE(r);
    ASSERT_EQ(r->status, 200) << r->body;
    legis::testing::expect_golden("draft_analyze.response.json", r->body);
    const auto again = c.Post("/api/drafts/analyze", request, "application/json");
    ASSERT_TRUE(again);
    EXPECT_EQ(again->body, r->body);
}

TEST_F(HttpTest, EmptyLandscapeInputIs400)
{
    auto c = client();
    const auto r = c.Post("/api/landscape", R"({"input": ""})", "application/json");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 400);
    EXPECT_EQ(nlohmann::json::parse(r->body)["code"], "EmptyInput");
}

TEST_F(HttpTest, PercentEncodedLawId)
{
    auto c = client();
    const auto r = c.Get("/api/laws/%2Fakn%2Fit%2Fact%2F2005-03-07%2F82");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 200) << r->body;
}

TEST_F(HttpTest, CsvDownload)
{
    auto c = client();
    const auto r = c.Get("/api/monitor/timeseries?metric=laws_enacted&granularity=year&from=2020-01-01&to=2021-12-31&format=csv");
    ASSERT_TRUE(r);
    EXPECT_EQ(r->status, 200);
    EXPECT_EQ(r->body, "period,value\n2020-01-01,1\n2021-01-01,1\n");
}

TEST_F(HttpTest, ConcurrentRequestsAgree)
{
    const std::string body = R"({"input": "protezione dei dati personali", "as_of": "2025-12-31", "k": 5})";
    std::vector<std::string> out(8);
    std::vector<std::thread> threads;
    for (std::size_t i = 0; i < out.size(); ++i)
        threads.emplace_back([&, i] {
            auto c = client();
            if (const auto r = c.Post("/api/landscape", body, "application/json"))
                out[i] = r->body;
        });
    for (auto& t : threads)
        t.join();
    ASSERT_FALSE(out[0].empty());
    for (const auto& o : out)
        EXPECT_EQ(o, out[0]);
}
