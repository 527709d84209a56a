#include "legis/core/error.hpp"
#include "legis/graph/graph_store.hpp"
#include "legis/ingest/corpus.hpp"
#include "legis/ingest/draft.hpp"
#include "legis/llm/gateway.hpp"
#include "legis/monitor/monitor.hpp"
#include "legis/rag/pipeline.hpp"
#include "legis/service/server.hpp"
#include "legis/text/metrics.hpp"
#include "legis/vector/hnsw.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <csignal>
#include <iostream>

namespace {

using namespace legis;
using nlohmann::json;

int exit_code(ErrorCode code)
{
    switch (code) {
    case ErrorCode::IoError:
    case ErrorCode::ManifestNotFound:
    case ErrorCode::CorruptSnapshot:
    case ErrorCode::VersionMismatch:
        return 2;
    default:
        return 1;
    }
}

void print_json(const json& j)
{
    std::cout << j.dump(2) << "\n";
}

vector::HnswIndex open_index(const graph::GraphStore& store, const std::string& index_path,
                             const std::shared_ptr<llm::LlmGateway>& gateway)
{
    if (!index_path.empty() && std::filesystem::exists(index_path))
        return vector::load_index(index_path);
    if (!index_path.empty())
        std::cerr << "index " << index_path << " not found; rebuilding from snapshot\n";
    return rag::build_law_index(store, llm::GatewayEmbedder(gateway));
}

service::HttpServer* g_server = nullptr;

void on_signal(int)
{
    if (g_server)
        g_server->stop();
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Legislative corpus graph, readability metrics, landscape retrieval and monitoring"};
    app.require_subcommand(1);

    std::string manifest, snapshot, index, law, input, as_of, draft_file, metric, granularity = "year", from, to,
                                                                               format = "json", host = "127.0.0.1",
                                                                               cors, locale = "it", kind = "cites",
                                                                               direction = "in";
    std::size_t k = rag::kDefaultK;
    int port = 8080, threads = 8;

    auto* cmd_ingest = app.add_subcommand("ingest", "Build the graph snapshot and vector index from a corpus manifest");
    cmd_ingest->add_option("--manifest", manifest, "JSONL corpus manifest")->required();
    cmd_ingest->add_option("--snapshot", snapshot, "Output snapshot path")->required();
    cmd_ingest->add_option("--index", index, "Output index path");

    auto* cmd_metrics = app.add_subcommand("metrics", "Readability profile of a stored law");
    cmd_metrics->add_option("--snapshot", snapshot)->required();
    cmd_metrics->add_option("--law", law, "Law id")->required();

    auto* cmd_landscape = app.add_subcommand("landscape", "Normative landscape for a free-text input");
    cmd_landscape->add_option("--snapshot", snapshot)->required();
    cmd_landscape->add_option("--index", index);
    cmd_landscape->add_option("--input", input)->required();
    cmd_landscape->add_option("--k", k)->check(CLI::Range(std::size_t{1}, service::kMaxK));
    cmd_landscape->add_option("--as-of", as_of, "YYYY-MM-DD, default today");

    auto* cmd_draft = app.add_subcommand("draft", "Analyze a draft proposal file");
    cmd_draft->add_option("--snapshot", snapshot)->required();
    cmd_draft->add_option("--index", index);
    cmd_draft->add_option("--file", draft_file, "Draft file: 'Key: value' header, blank line, body")->required();
    cmd_draft->add_option("--k", k)->check(CLI::Range(std::size_t{1}, service::kMaxK));
    cmd_draft->add_option("--as-of", as_of);
    cmd_draft->add_option("--locale", locale)->check(CLI::IsMember({"it", "en"}));

    auto* cmd_monitor = app.add_subcommand("monitor", "Complexity time series");
    cmd_monitor->add_option("--snapshot", snapshot)->required();
    cmd_monitor->add_option("--metric", metric)->required();
    cmd_monitor->add_option("--granularity", granularity);
    cmd_monitor->add_option("--from", from)->required();
    cmd_monitor->add_option("--to", to)->required();
    cmd_monitor->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    auto* cmd_degree = app.add_subcommand("degree", "Degree distribution over laws");
    cmd_degree->add_option("--snapshot", snapshot)->required();
    cmd_degree->add_option("--kind", kind);
    cmd_degree->add_option("--direction", direction);
    cmd_degree->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    auto* cmd_serve = app.add_subcommand("serve", "Run the HTTP API");
    cmd_serve->add_option("--snapshot", snapshot)->required();
    cmd_serve->add_option("--index", index);
    cmd_serve->add_option("--host", host);
    cmd_serve->add_option("--port", port)->check(CLI::Range(0, 65535));
    cmd_serve->add_option("--k", k)->check(CLI::Range(std::size_t{1}, service::kMaxK));
    cmd_serve->add_option("--locale", locale)->check(CLI::IsMember({"it", "en"}));
    cmd_serve->add_option("--cors-origin", cors);
    cmd_serve->add_option("--threads", threads)->check(CLI::Range(1, 256));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        const auto date_or_today = [&] { return as_of.empty() ? Date::today() : Date::parse(as_of); };

        if (*cmd_ingest) {
            const auto scan = ingest::scan_corpus(manifest);
            for (const auto& issue : scan.issues)
                std::cerr << "skipped " << issue.path << ": " << issue.message << "\n";
            graph::GraphStore store;
            graph::ingest_documents(store, scan.documents);
            store.freeze();
            graph::save_snapshot(store, snapshot);
            json out{{"parsed", scan.stats.parsed},
                     {"failed", scan.stats.failed},
                     {"skipped", scan.stats.skipped},
                     {"nodes", store.node_count()},
                     {"edges", store.edge_count()}};
            if (!index.empty()) {
                auto gateway = llm::LlmGateway::from_config(llm::GatewayConfig::from_env());
                const auto idx = rag::build_law_index(store, llm::GatewayEmbedder(gateway));
                vector::save_index(idx, index);
                out["indexed"] = idx.size();
            }
            print_json(out);
            return 0;
        }

        if (*cmd_metrics) {
            const auto store = graph::load_snapshot(snapshot);
            const auto& node = store.node(law);
            if (node.kind != graph::NodeKind::Law || node.properties.stub)
                throw Error(ErrorCode::NodeNotFound, "no stored text for law " + law);
            json out{{"law_id", law}, {"title", node.properties.title}, {"profile", text::profile(node.properties.text)}};
            print_json(out);
            return 0;
        }

        if (*cmd_landscape || *cmd_draft) {
            auto store = graph::load_snapshot(snapshot);
            store.freeze();
            auto gateway = llm::LlmGateway::from_config(llm::GatewayConfig::from_env());
            auto idx = open_index(store, index, gateway);
            idx.freeze();
            const rag::Pipeline pipeline(store, idx, *gateway);
            if (*cmd_landscape) {
                print_json(rag::to_json(pipeline.landscape(input, date_or_today(), k)));
            } else {
                const auto d = ingest::load_draft_file(draft_file);
                const auto when = date_or_today();
                auto out = rag::to_json(pipeline.analyze_draft(d, when, k, report::parse_locale(locale)));
                out["as_of"] = when.iso();
                print_json(out);
            }
            return 0;
        }

        if (*cmd_monitor) {
            const auto store = graph::load_snapshot(snapshot);
            const auto ts = monitor::timeseries(store, monitor::parse_series_metric(metric),
                                                monitor::parse_granularity(granularity), Date::parse(from),
                                                Date::parse(to));
            std::cout << (format == "csv" ? monitor::export_csv(ts) : monitor::export_json(ts) + "\n");
            return 0;
        }

        if (*cmd_degree) {
            const auto store = graph::load_snapshot(snapshot);
            const auto h = monitor::degree_distribution(store, graph::parse_edge_kind(kind),
                                                        monitor::parse_direction(direction));
            std::cout << (format == "csv" ? monitor::export_csv(h) : monitor::export_json(h) + "\n");
            return 0;
        }

        if (*cmd_serve) {
            service::ServiceConfig cfg;
            cfg.snapshot_path = snapshot;
            cfg.index_path = index;
            cfg.host = host;
            cfg.port = port;
            cfg.default_k = k;
            cfg.locale = report::parse_locale(locale);
            cfg.cors_origin = cors;
            cfg.threads = threads;
            cfg.gateway = llm::GatewayConfig::from_env();
            const auto ctx = service::ServiceContext::load(cfg);
            service::HttpServer server(*ctx);
            const int bound = server.bind(host, port);
            g_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::cerr << "listening on " << host << ":" << bound << "\n";
            server.listen();
            g_server = nullptr;
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
