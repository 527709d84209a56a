#include "support/golden.hpp"
#include "support/process.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>

using legis::testing::quote;
using legis::testing::run;
namespace fs = std::filesystem;

namespace {

const std::string kCli = LEGIS_CLI;
const fs::path kFixtures = LEGIS_FIXTURES;
const std::string kLandscapeInput = "regolamentazione delle tecnologie di intelligenza artificiale";

class CliTest : public ::testing::Test {
protected:
    static void SetUpTestSuite()
    {
        dir_ = new fs::path(fs::temp_directory_path() / "legis-cli-test");
        fs::remove_all(*dir_);
        fs::create_directories(*dir_);
        const auto r = run(kCli + " ingest --manifest " + quote((kFixtures / "corpus" / "manifest.jsonl").string()) +
                           " --snapshot " + quote(snapshot()) + " --index " + quote(index()));
        ASSERT_EQ(r.exit_code, 0);
        ingest_stdout_ = new std::string(r.out);
    }
    static void TearDownTestSuite()
    {
        fs::remove_all(*dir_);
        delete dir_;
        delete ingest_stdout_;
    }
    static std::string snapshot() { return (*dir_ / "corpus.snapshot.json").string(); }
    static std::string index() { return (*dir_ / "corpus.hnsw").string(); }

    static fs::path* dir_;
    static std::string* ingest_stdout_;
};

fs::path* CliTest::dir_ = nullptr;
std::string* CliTest::ingest_stdout_ = nullptr;

} // namespace

TEST_F(CliTest, IngestPrintsStats)
{
    const auto j = nlohmann::json::parse(*ingest_stdout_);
    EXPECT_EQ(j["parsed"], 10);
    EXPECT_EQ(j["failed"], 0);
    EXPECT_EQ(j["skipped"], 0);
    EXPECT_EQ(j["indexed"], 10);
    EXPECT_TRUE(fs::exists(snapshot()));
    EXPECT_TRUE(fs::exists(index()));
}

TEST_F(CliTest, LandscapeMatchesGoldenAndIsStable)
{
    const auto cmd = kCli + " landscape --snapshot " + quote(snapshot()) + " --index " + quote(index()) +
                     " --as-of 2025-12-31 --input " + quote(kLandscapeInput);
    const auto first = run(cmd);
    ASSERT_EQ(first.exit_code, 0);
    EXPECT_EQ(run(cmd).out, first.out);
    legis::testing::expect_golden("landscape.json", first.out);

    const auto rebuilt = run(kCli + " landscape --snapshot " + quote(snapshot()) + " --as-of 2025-12-31 --input " +
                             quote(kLandscapeInput));
    EXPECT_EQ(rebuilt.out, first.out);
}

TEST_F(CliTest, DraftMatchesGolden)
{
    const auto cmd = kCli + " draft --snapshot " + quote(snapshot()) + " --index " + quote(index()) +
                     " --as-of 2025-12-31 --file " +
                     quote((kFixtures / "drafts" / "ddl_intelligenza_artificiale.txt").string());
    const auto r = run(cmd);
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_EQ(run(cmd).out, r.out);
    legis::testing::expect_golden("draft_cli.json", r.out);
}

TEST_F(CliTest, Metrics)
{
    const auto ok = run(kCli + " metrics --snapshot " + quote(snapshot()) + " --law /akn/it/act/2005-03-07/82");
    ASSERT_EQ(ok.exit_code, 0);
    EXPECT_TRUE(nlohmann::json::parse(ok.out)["profile"].contains("gulpease"));
    EXPECT_EQ(run(kCli + " metrics --snapshot " + quote(snapshot()) + " --law /akn/it/act/1999-01-01/1").exit_code, 1);
}

TEST_F(CliTest, MonitorCsvDeterministic)
{
    const auto cmd = kCli + " monitor --snapshot " + quote(snapshot()) +
                     " --metric in_force_count --granularity year --from 2003-01-01 --to 2025-12-31 --format csv";
    const auto a = run(cmd);
    ASSERT_EQ(a.exit_code, 0);
    EXPECT_EQ(run(cmd).out, a.out);
    EXPECT_EQ(a.out.rfind("period,value\n2003-01-01,1\n", 0), 0u);
    EXPECT_NE(a.out.find("2021-01-01,8\n"), std::string::npos);
    EXPECT_NE(a.out.find("2025-01-01,9\n"), std::string::npos);

    const auto deg = run(kCli + " degree --snapshot " + quote(snapshot()) + " --format csv");
    ASSERT_EQ(deg.exit_code, 0);
    EXPECT_EQ(deg.out.rfind("degree,count\n", 0), 0u);
}

TEST_F(CliTest, ErrorExitCodes)
{
    EXPECT_EQ(run(kCli + " ingest --manifest /nonexistent/manifest.jsonl --snapshot " + quote((*dir_ / "x").string()))
                  .exit_code,
              2);
    EXPECT_EQ(run(kCli + " metrics --snapshot /nonexistent.json --law x").exit_code, 2);
    EXPECT_EQ(run(kCli + " landscape --snapshot " + quote(snapshot()) + " --input ''").exit_code, 1);
    EXPECT_EQ(run(kCli + " bogus").exit_code, 1);
    EXPECT_EQ(run(kCli + " monitor --snapshot " + quote(snapshot()) +
                  " --metric laws_enacted --from 2010-01-01 --to 2000-01-01")
                  .exit_code,
              1);
}
