#pragma once

#include "legis/core/date.hpp"
#include "legis/ingest/document.hpp"

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace legis::graph {

using ingest::RefKind;

enum class NodeKind { Law, Article };
enum class EdgeKind { Contains, Cites, Abrogates };

std::string_view to_string(NodeKind kind) noexcept;
std::string_view to_string(EdgeKind kind) noexcept;
NodeKind parse_node_kind(std::string_view s);
EdgeKind parse_edge_kind(std::string_view s);

struct NodeProperties {
    std::string title;
    std::optional<Date> publication_date;
    std::optional<std::string> ministry_domain;
    std::optional<std::string> heading;
    std::string text_digest;
    std::string text;
    /// Cited but never ingested.
    bool stub = false;

    friend bool operator==(const NodeProperties&, const NodeProperties&) = default;
};

struct NodeRecord {
    std::string node_id;
    NodeKind kind = NodeKind::Law;
    NodeProperties properties;

    friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
};

struct EdgeProperties {
    std::optional<RefKind> ref_kind;     ///< CITES only
    bool specifies_paragraph = false;    ///< CITES only
    std::optional<Date> effective_date;  ///< ABROGATES only

    friend bool operator==(const EdgeProperties&, const EdgeProperties&) = default;
};

struct EdgeRecord {
    std::string src;
    std::string dst;
    EdgeKind kind = EdgeKind::Cites;
    EdgeProperties properties;

    friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

/// Identity of an edge: (src, dst, kind), plus the ref kind for CITES so a
/// law may cite the same target from its preamble and its body.
struct EdgeKey {
    std::string src;
    std::string dst;
    EdgeKind kind = EdgeKind::Cites;
    int ref_kind = -1;

    friend auto operator<=>(const EdgeKey&, const EdgeKey&) = default;
    friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
};

EdgeKey key_of(const EdgeRecord& edge);

struct GraphSnapshot {
    static constexpr int kFormatVersion = 1;

    int format_version = kFormatVersion;
    std::vector<NodeRecord> nodes; ///< sorted by node_id
    std::vector<EdgeRecord> edges; ///< sorted by (src, dst, kind, ref_kind)

    friend bool operator==(const GraphSnapshot&, const GraphSnapshot&) = default;
};

/// In-memory property graph of laws and articles.
///
/// Single writer until freeze(); afterwards every mutator throws
/// Error{Frozen} and the store may be shared read-only across threads.
class GraphStore {
public:
    GraphStore() = default;

    /// Creates or replaces the Law node, its Article nodes and CONTAINS
    /// edges, and the CITES edges sourced from the document. Targets that are
    /// not in the graph become stub nodes. Articles dropped by a re-upsert are
    /// kept as stubs so edges pointing at them stay valid.
    std::string upsert_law(const ingest::LawDocument& doc);

    /// Records `src` ABROGATES `dst`. Both must be Law nodes. Set semantics:
    /// a second call for the same pair replaces the effective date.
    void add_abrogation(const std::string& src, const std::string& dst, Date effective_date);

    /// Creates a stub Law node unless the id already exists.
    void ensure_law(const std::string& law_id);

    void freeze() noexcept { frozen_ = true; }
    [[nodiscard]] bool frozen() const noexcept { return frozen_; }

    [[nodiscard]] const NodeRecord* find(std::string_view node_id) const;
    /// Throws Error{NodeNotFound}.
    [[nodiscard]] const NodeRecord& node(std::string_view node_id) const;
    [[nodiscard]] bool contains(std::string_view node_id) const { return find(node_id) != nullptr; }

    [[nodiscard]] const std::map<std::string, NodeRecord, std::less<>>& nodes() const noexcept { return nodes_; }
    [[nodiscard]] const std::map<EdgeKey, EdgeRecord>& edges() const noexcept { return edges_; }
    [[nodiscard]] std::size_t node_count() const noexcept { return nodes_.size(); }
    [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }

    [[nodiscard]] std::vector<const EdgeRecord*> out_edges(std::string_view node_id) const;
    [[nodiscard]] std::vector<const EdgeRecord*> in_edges(std::string_view node_id) const;

    /// Article ids contained by a law, in article order.
    [[nodiscard]] std::vector<std::string> articles_of(std::string_view law_id) const;

    /// The law a unit belongs to: itself for a Law, the CONTAINS parent for an Article.
    [[nodiscard]] std::string owning_law(std::string_view node_id) const;

    /// Non-stub laws published on or before `as_of` and not abrogated by an
    /// edge effective on or before `as_of`. Sorted by id.
    [[nodiscard]] std::vector<std::string> in_force_laws(Date as_of) const;

    /// CITES edges out of the node and, for a Law, out of all its Articles.
    /// Throws Error{NodeNotFound}.
    [[nodiscard]] std::vector<EdgeRecord> outgoing_refs(std::string_view node_id,
                                                        std::optional<RefKind> filter = {}) const;

    /// Citation targets ranked by the number of distinct citing laws
    /// (count desc, id asc), optionally restricted to citing laws in `within`.
    [[nodiscard]] std::vector<std::pair<std::string, std::size_t>>
    top_cited(std::optional<RefKind> filter, const std::optional<std::set<std::string>>& within,
              std::size_t k) const;

    /// True when every edge endpoint exists and kind constraints hold.
    [[nodiscard]] bool check_integrity(std::string* problem = nullptr) const;

    [[nodiscard]] GraphSnapshot to_snapshot() const;
    /// Throws Error{CorruptSnapshot} on integrity violations.
    static GraphStore from_snapshot(const GraphSnapshot& snapshot);

    friend bool operator==(const GraphStore& a, const GraphStore& b)
    {
        return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
    }

private:
    void require_mutable() const;
    void put_edge(EdgeRecord edge);
    void erase_edge(const EdgeKey& key);
    void ensure_article(const std::string& article_id);
    NodeRecord& ensure_node(const std::string& id, NodeKind kind);

    std::map<std::string, NodeRecord, std::less<>> nodes_;
    std::map<EdgeKey, EdgeRecord> edges_;
    std::map<std::string, std::set<EdgeKey>, std::less<>> out_;
    std::map<std::string, std::set<EdgeKey>, std::less<>> in_;
    bool frozen_ = false;
};

/// Upserts every document, then applies their abrogation claims (missing
/// targets become stubs).
void ingest_documents(GraphStore& store, const std::vector<ingest::LawDocument>& docs);

std::string serialize_snapshot(const GraphSnapshot& snapshot);
/// Throws Error{VersionMismatch} or Error{CorruptSnapshot}.
GraphSnapshot parse_snapshot(std::string_view bytes);

void save_snapshot(const GraphStore& store, const std::filesystem::path& path);
GraphStore load_snapshot(const std::filesystem::path& path);

} // namespace legis::graph
