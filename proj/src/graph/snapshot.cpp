#include "legis/core/error.hpp"
#include "legis/graph/graph_store.hpp"
#include "legis/ingest/corpus.hpp"

#include <fstream>

namespace legis::graph {

namespace {

using nlohmann::json;

template <class T, class F>
json optional_json(const std::optional<T>& v, F&& f)
{
    return v ? json(f(*v)) : json(nullptr);
}

json node_to_json(const NodeRecord& n)
{
    const auto& p = n.properties;
    return {{"id", n.node_id},
            {"kind", to_string(n.kind)},
            {"stub", p.stub},
            {"title", p.title},
            {"publication_date", optional_json(p.publication_date, [](Date d) { return d.iso(); })},
            {"ministry_domain", optional_json(p.ministry_domain, [](const std::string& s) { return s; })},
            {"heading", optional_json(p.heading, [](const std::string& s) { return s; })},
            {"text_digest", p.text_digest},
            {"text", p.text}};
}

json edge_to_json(const EdgeRecord& e)
{
    const auto& p = e.properties;
    return {{"src", e.src},
            {"dst", e.dst},
            {"kind", to_string(e.kind)},
            {"ref_kind", optional_json(p.ref_kind, [](RefKind k) { return std::string(ingest::to_string(k)); })},
            {"specifies_paragraph", p.specifies_paragraph},
            {"effective_date", optional_json(p.effective_date, [](Date d) { return d.iso(); })}};
}

std::optional<std::string> opt_string(const json& j, const char* key)
{
    const auto& v = j.at(key);
    return v.is_null() ? std::nullopt : std::optional<std::string>(v.get<std::string>());
}

std::optional<Date> opt_date(const json& j, const char* key)
{
    auto s = opt_string(j, key);
    return s ? std::optional<Date>(Date::parse(*s)) : std::nullopt;
}

NodeRecord node_from_json(const json& j)
{
    NodeRecord n;
    n.node_id = j.at("id").get<std::string>();
    n.kind = parse_node_kind(j.at("kind").get<std::string>());
    auto& p = n.properties;
    p.stub = j.at("stub").get<bool>();
    p.title = j.at("title").get<std::string>();
    p.publication_date = opt_date(j, "publication_date");
    p.ministry_domain = opt_string(j, "ministry_domain");
    p.heading = opt_string(j, "heading");
    p.text_digest = j.at("text_digest").get<std::string>();
    p.text = j.at("text").get<std::string>();
    return n;
}

EdgeRecord edge_from_json(const json& j)
{
    EdgeRecord e;
    e.src = j.at("src").get<std::string>();
    e.dst = j.at("dst").get<std::string>();
    e.kind = parse_edge_kind(j.at("kind").get<std::string>());
    if (auto rk = opt_string(j, "ref_kind"))
        e.properties.ref_kind = ingest::parse_ref_kind(*rk);
    e.properties.specifies_paragraph = j.at("specifies_paragraph").get<bool>();
    e.properties.effective_date = opt_date(j, "effective_date");
    return e;
}

} // namespace

std::string serialize_snapshot(const GraphSnapshot& snapshot)
{
    json nodes = json::array();
    for (const auto& n : snapshot.nodes)
        nodes.push_back(node_to_json(n));
    json edges = json::array();
    for (const auto& e : snapshot.edges)
        edges.push_back(edge_to_json(e));
    json doc = {{"format_version", snapshot.format_version}, {"nodes", std::move(nodes)},
                {"edges", std::move(edges)}};
    return doc.dump(1) + "\n";
}

GraphSnapshot parse_snapshot(std::string_view bytes)
{
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::CorruptSnapshot, std::string("snapshot is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("format_version") || !doc["format_version"].is_number_integer())
        throw Error(ErrorCode::CorruptSnapshot, "snapshot without format_version");
    const int version = doc["format_version"].get<int>();
    if (version != GraphSnapshot::kFormatVersion)
        throw Error(ErrorCode::VersionMismatch,
                    "snapshot format_version " + std::to_string(version) + ", expected " +
                        std::to_string(GraphSnapshot::kFormatVersion));
    GraphSnapshot snap;
    snap.format_version = version;
    try {
        for (const auto& n : doc.at("nodes"))
            snap.nodes.push_back(node_from_json(n));
        for (const auto& e : doc.at("edges"))
            snap.edges.push_back(edge_from_json(e));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::CorruptSnapshot, std::string("malformed snapshot: ") + e.what());
    } catch (const Error& e) {
        throw Error(ErrorCode::CorruptSnapshot, std::string("malformed snapshot: ") + e.what());
    }
    return snap;
}

void save_snapshot(const GraphStore& store, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::IoError, "cannot write " + path.string());
    out << serialize_snapshot(store.to_snapshot());
    if (!out)
        throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

GraphStore load_snapshot(const std::filesystem::path& path)
{
    return GraphStore::from_snapshot(parse_snapshot(ingest::read_file(path)));
}

} // namespace legis::graph
