#include "legis/graph/graph_store.hpp"

#include "legis/core/error.hpp"
#include "legis/core/strings.hpp"
#include "legis/ingest/uri.hpp"

#include <algorithm>

namespace legis::graph {

std::string_view to_string(NodeKind kind) noexcept
{
    return kind == NodeKind::Law ? "Law" : "Article";
}

std::string_view to_string(EdgeKind kind) noexcept
{
    switch (kind) {
    case EdgeKind::Contains: return "CONTAINS";
    case EdgeKind::Cites: return "CITES";
    case EdgeKind::Abrogates: return "ABROGATES";
    }
    return "?";
}

NodeKind parse_node_kind(std::string_view s)
{
    if (s == "Law")
        return NodeKind::Law;
    if (s == "Article")
        return NodeKind::Article;
    throw Error(ErrorCode::InvalidArgument, "unknown node kind '" + std::string(s) + "'");
}

EdgeKind parse_edge_kind(std::string_view s)
{
    const std::string up = [&] {
        std::string u(s);
        for (char& c : u)
            if (c >= 'a' && c <= 'z')
                c = static_cast<char>(c - 32);
        return u;
    }();
    if (up == "CONTAINS")
        return EdgeKind::Contains;
    if (up == "CITES")
        return EdgeKind::Cites;
    if (up == "ABROGATES")
        return EdgeKind::Abrogates;
    throw Error(ErrorCode::InvalidArgument, "unknown edge kind '" + std::string(s) + "'");
}

EdgeKey key_of(const EdgeRecord& edge)
{
    int ref = -1;
    if (edge.kind == EdgeKind::Cites && edge.properties.ref_kind)
        ref = static_cast<int>(*edge.properties.ref_kind);
    return {edge.src, edge.dst, edge.kind, ref};
}

void GraphStore::require_mutable() const
{
    if (frozen_)
        throw Error(ErrorCode::Frozen, "graph is frozen");
}

const NodeRecord* GraphStore::find(std::string_view node_id) const
{
    const auto it = nodes_.find(node_id);
    return it == nodes_.end() ? nullptr : &it->second;
}

const NodeRecord& GraphStore::node(std::string_view node_id) const
{
    if (const auto* n = find(node_id))
        return *n;
    throw Error(ErrorCode::NodeNotFound, "unknown node " + std::string(node_id));
}

NodeRecord& GraphStore::ensure_node(const std::string& id, NodeKind kind)
{
    auto [it, inserted] = nodes_.try_emplace(id);
    if (inserted) {
        it->second.node_id = id;
        it->second.kind = kind;
        it->second.properties.stub = true;
    }
    return it->second;
}

void GraphStore::ensure_law(const std::string& law_id)
{
    require_mutable();
    auto& n = ensure_node(law_id, NodeKind::Law);
    if (n.kind != NodeKind::Law)
        throw Error(ErrorCode::KindMismatch, law_id + " is not a Law");
}

void GraphStore::ensure_article(const std::string& article_id)
{
    const std::string law(ingest::law_part(article_id));
    ensure_law(law);
    if (nodes_.contains(article_id))
        return;
    auto& art = ensure_node(article_id, NodeKind::Article);
    art.properties.publication_date = nodes_.at(law).properties.publication_date;
    put_edge({law, article_id, EdgeKind::Contains, {}});
}

void GraphStore::put_edge(EdgeRecord edge)
{
    const EdgeKey key = key_of(edge);
    auto [it, inserted] = edges_.try_emplace(key, edge);
    if (!inserted) {
        if (edge.kind == EdgeKind::Cites)
            it->second.properties.specifies_paragraph |= edge.properties.specifies_paragraph;
        else
            it->second.properties = edge.properties;
        return;
    }
    out_[key.src].insert(key);
    in_[key.dst].insert(key);
}

void GraphStore::erase_edge(const EdgeKey& key)
{
    if (edges_.erase(key) == 0)
        return;
    if (auto it = out_.find(key.src); it != out_.end()) {
        it->second.erase(key);
        if (it->second.empty())
            out_.erase(it);
    }
    if (auto it = in_.find(key.dst); it != in_.end()) {
        it->second.erase(key);
        if (it->second.empty())
            in_.erase(it);
    }
}

std::string GraphStore::upsert_law(const ingest::LawDocument& doc)
{
    require_mutable();
    if (doc.law_id.empty())
        throw Error(ErrorCode::InvalidArgument, "document without law_id");

    auto& law = ensure_node(doc.law_id, NodeKind::Law);
    if (law.kind != NodeKind::Law)
        throw Error(ErrorCode::KindMismatch, doc.law_id + " is not a Law");
    law.properties = NodeProperties{};
    law.properties.title = doc.title;
    law.properties.publication_date = doc.publication_date;
    law.properties.ministry_domain = doc.ministry_domain;
    law.properties.text = doc.full_text;
    law.properties.text_digest = sha256_hex(doc.full_text);
    law.properties.stub = false;

    // Drop citations previously sourced from this law so the upsert replaces them.
    const auto previous_articles = articles_of(doc.law_id);
    std::vector<EdgeKey> stale;
    for (const auto& unit : previous_articles)
        if (auto it = out_.find(unit); it != out_.end())
            for (const auto& key : it->second)
                if (key.kind == EdgeKind::Cites)
                    stale.push_back(key);
    if (auto it = out_.find(doc.law_id); it != out_.end())
        for (const auto& key : it->second)
            if (key.kind == EdgeKind::Cites)
                stale.push_back(key);
    for (const auto& key : stale)
        erase_edge(key);

    std::set<std::string> current;
    for (const auto& article : doc.articles) {
        current.insert(article.article_id);
        auto& node = ensure_node(article.article_id, NodeKind::Article);
        node.properties = NodeProperties{};
        node.properties.title = article.heading.value_or("");
        node.properties.heading = article.heading;
        node.properties.publication_date = doc.publication_date;
        node.properties.text = article.text;
        node.properties.text_digest = sha256_hex(article.text);
        put_edge({doc.law_id, article.article_id, EdgeKind::Contains, {}});
    }
    for (const auto& old : previous_articles)
        if (!current.contains(old))
            nodes_.at(old).properties.stub = true;

    const auto add_ref = [&](const ingest::RawReference& ref) {
        if (ref.target_uri.find("#art_") != std::string::npos)
            ensure_article(ref.target_uri);
        else
            ensure_law(ref.target_uri);
        const std::string& src = nodes_.contains(ref.source_unit) ? ref.source_unit : doc.law_id;
        EdgeRecord edge{src, ref.target_uri, EdgeKind::Cites, {}};
        edge.properties.ref_kind = ref.kind;
        edge.properties.specifies_paragraph = ref.specifies_paragraph;
        put_edge(std::move(edge));
    };
    for (const auto& ref : doc.preamble_refs)
        add_ref(ref);
    for (const auto& ref : doc.body_refs)
        add_ref(ref);
    return doc.law_id;
}

void GraphStore::add_abrogation(const std::string& src, const std::string& dst, Date effective_date)
{
    require_mutable();
    const auto& s = node(src);
    const auto& d = node(dst);
    if (s.kind != NodeKind::Law || d.kind != NodeKind::Law)
        throw Error(ErrorCode::KindMismatch, "ABROGATES links Law nodes only");
    EdgeRecord edge{src, dst, EdgeKind::Abrogates, {}};
    edge.properties.effective_date = effective_date;
    put_edge(std::move(edge));
}

std::vector<const EdgeRecord*> GraphStore::out_edges(std::string_view node_id) const
{
    std::vector<const EdgeRecord*> out;
    if (auto it = out_.find(node_id); it != out_.end())
        for (const auto& key : it->second)
            out.push_back(&edges_.at(key));
    return out;
}

std::vector<const EdgeRecord*> GraphStore::in_edges(std::string_view node_id) const
{
    std::vector<const EdgeRecord*> out;
    if (auto it = in_.find(node_id); it != in_.end())
        for (const auto& key : it->second)
            out.push_back(&edges_.at(key));
    return out;
}

std::vector<std::string> GraphStore::articles_of(std::string_view law_id) const
{
    std::vector<std::string> ids;
    if (auto it = out_.find(law_id); it != out_.end())
        for (const auto& key : it->second)
            if (key.kind == EdgeKind::Contains)
                ids.push_back(key.dst);
    std::sort(ids.begin(), ids.end(), [](const std::string& a, const std::string& b) {
        const auto na = std::string_view(a).substr(a.rfind("#art_") + 5);
        const auto nb = std::string_view(b).substr(b.rfind("#art_") + 5);
        return ingest::article_number_less(na, nb) ||
               (!ingest::article_number_less(nb, na) && a < b);
    });
    return ids;
}

std::string GraphStore::owning_law(std::string_view node_id) const
{
    const auto& n = node(node_id);
    if (n.kind == NodeKind::Law)
        return n.node_id;
    if (auto it = in_.find(node_id); it != in_.end())
        for (const auto& key : it->second)
            if (key.kind == EdgeKind::Contains)
                return key.src;
    return std::string(ingest::law_part(node_id));
}

std::vector<std::string> GraphStore::in_force_laws(Date as_of) const
{
    std::vector<std::string> result;
    for (const auto& [id, n] : nodes_) {
        if (n.kind != NodeKind::Law || n.properties.stub || !n.properties.publication_date ||
            *n.properties.publication_date > as_of)
            continue;
        bool abrogated = false;
        if (auto it = in_.find(id); it != in_.end()) {
            for (const auto& key : it->second) {
                if (key.kind != EdgeKind::Abrogates)
                    continue;
                const auto& eff = edges_.at(key).properties.effective_date;
                if (eff && *eff <= as_of) {
                    abrogated = true;
                    break;
                }
            }
        }
        if (!abrogated)
            result.push_back(id);
    }
    return result;
}

std::vector<EdgeRecord> GraphStore::outgoing_refs(std::string_view node_id,
                                                  std::optional<RefKind> filter) const
{
    const auto& n = node(node_id);
    std::vector<std::string> units{n.node_id};
    if (n.kind == NodeKind::Law)
        for (auto& a : articles_of(node_id))
            units.push_back(std::move(a));

    std::vector<EdgeRecord> refs;
    for (const auto& unit : units)
        for (const auto* e : out_edges(unit))
            if (e->kind == EdgeKind::Cites && (!filter || e->properties.ref_kind == filter))
                refs.push_back(*e);
    std::sort(refs.begin(), refs.end(),
              [](const EdgeRecord& a, const EdgeRecord& b) { return key_of(a) < key_of(b); });
    return refs;
}

std::vector<std::pair<std::string, std::size_t>>
GraphStore::top_cited(std::optional<RefKind> filter, const std::optional<std::set<std::string>>& within,
                      std::size_t k) const
{
    if (k == 0)
        throw Error(ErrorCode::InvalidArgument, "k must be at least 1");
    std::map<std::string, std::set<std::string>> citing;
    for (const auto& [key, edge] : edges_) {
        if (key.kind != EdgeKind::Cites || (filter && edge.properties.ref_kind != filter))
            continue;
        std::string law = owning_law(edge.src);
        if (within && !within->contains(law))
            continue;
        citing[edge.dst].insert(std::move(law));
    }
    std::vector<std::pair<std::string, std::size_t>> ranked;
    ranked.reserve(citing.size());
    for (const auto& [target, laws] : citing)
        ranked.emplace_back(target, laws.size());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    if (ranked.size() > k)
        ranked.resize(k);
    return ranked;
}

bool GraphStore::check_integrity(std::string* problem) const
{
    const auto fail = [&](std::string msg) {
        if (problem)
            *problem = std::move(msg);
        return false;
    };
    for (const auto& [key, edge] : edges_) {
        const auto* s = find(edge.src);
        const auto* d = find(edge.dst);
        if (!s || !d)
            return fail("dangling edge " + edge.src + " -> " + edge.dst);
        switch (edge.kind) {
        case EdgeKind::Contains:
            if (s->kind != NodeKind::Law || d->kind != NodeKind::Article)
                return fail("CONTAINS must link Law to Article: " + edge.src);
            break;
        case EdgeKind::Cites:
            if (!edge.properties.ref_kind)
                return fail("CITES without ref_kind: " + edge.src);
            break;
        case EdgeKind::Abrogates:
            if (s->kind != NodeKind::Law || d->kind != NodeKind::Law || !edge.properties.effective_date)
                return fail("ABROGATES must link Law to Law with a date: " + edge.src);
            break;
        }
    }
    for (const auto& [id, n] : nodes_) {
        if (n.kind != NodeKind::Article)
            continue;
        bool has_parent = false;
        for (const auto* e : in_edges(id))
            has_parent |= e->kind == EdgeKind::Contains;
        if (!has_parent)
            return fail("article without parent law: " + id);
    }
    return true;
}

GraphSnapshot GraphStore::to_snapshot() const
{
    GraphSnapshot snap;
    snap.nodes.reserve(nodes_.size());
    for (const auto& [id, n] : nodes_)
        snap.nodes.push_back(n);
    snap.edges.reserve(edges_.size());
    for (const auto& [key, e] : edges_)
        snap.edges.push_back(e);
    return snap;
}

GraphStore GraphStore::from_snapshot(const GraphSnapshot& snapshot)
{
    GraphStore store;
    for (const auto& n : snapshot.nodes) {
        if (!store.nodes_.emplace(n.node_id, n).second)
            throw Error(ErrorCode::CorruptSnapshot, "duplicate node " + n.node_id);
    }
    for (const auto& e : snapshot.edges) {
        if (store.edges_.contains(key_of(e)))
            throw Error(ErrorCode::CorruptSnapshot, "duplicate edge " + e.src + " -> " + e.dst);
        store.put_edge(e);
    }
    std::string problem;
    if (!store.check_integrity(&problem))
        throw Error(ErrorCode::CorruptSnapshot, problem);
    return store;
}

void ingest_documents(GraphStore& store, const std::vector<ingest::LawDocument>& docs)
{
    for (const auto& doc : docs)
        store.upsert_law(doc);
    for (const auto& doc : docs)
        for (const auto& claim : doc.abrogations) {
            store.ensure_law(claim.target_uri);
            store.add_abrogation(doc.law_id, claim.target_uri, claim.effective_date);
        }
}

} // namespace legis::graph
