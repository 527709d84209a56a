#include "legis/rag/pipeline.hpp"

#include "legis/core/error.hpp"
#include "legis/core/strings.hpp"
#include "legis/llm/guardrail.hpp"

#include <algorithm>
#include <set>

namespace legis::rag {

using nlohmann::json;

ProfileCache build_profile_cache(const graph::GraphStore& store)
{
    ProfileCache cache;
    for (const auto& [id, node] : store.nodes()) {
        if (node.kind != graph::NodeKind::Law || node.properties.stub)
            continue;
        try {
            cache.emplace(id, text::profile(node.properties.text));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::EmptyText)
                throw;
        }
    }
    return cache;
}

std::vector<FoundationCitation> rank_foundations(const graph::GraphStore& store,
                                                 const std::vector<std::string>& law_ids)
{
    const std::set<std::string> distinct(law_ids.begin(), law_ids.end());
    std::map<std::string, std::size_t> counts;
    for (const auto& law : distinct) {
        std::set<std::string> targets;
        for (const auto& e : store.outgoing_refs(law, ingest::RefKind::Preamble))
            targets.insert(e.dst);
        for (const auto& t : targets)
            ++counts[t];
    }
    std::vector<FoundationCitation> out;
    for (const auto& [target, count] : counts) {
        FoundationCitation f;
        f.target_id = target;
        f.target_kind = store.node(target).kind;
        f.citing_count = count;
        f.relative_frequency = static_cast<double>(count) / static_cast<double>(distinct.size());
        out.push_back(std::move(f));
    }
    std::stable_sort(out.begin(), out.end(), [](const FoundationCitation& a, const FoundationCitation& b) {
        return a.citing_count > b.citing_count;
    });
    return out;
}

Pipeline::Pipeline(const graph::GraphStore& store, const vector::HnswIndex& index, llm::LlmGateway& gateway,
                   const ProfileCache* profiles)
    : store_(store), index_(index), gateway_(gateway), profiles_(profiles)
{
}

TopicSet Pipeline::extract_topics(std::string_view input) const
{
    if (trim(input).empty())
        throw Error(ErrorCode::EmptyInput, "input text is empty");
    llm::ChatRequest req;
    req.template_id = llm::TemplateId::TopicExtraction;
    req.variables["text"] = std::string(trim(input));
    req.max_tokens = 128;
    const auto raw = gateway_.chat(req);
    TopicSet t;
    try {
        t.seed_topics = llm::parse_topic_list(raw, kMaxSeedTopics);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::UnparsableOutput)
            throw Error(ErrorCode::EmptyTopics, "no topics could be extracted from the input");
        throw;
    }
    t.expanded_topics = t.seed_topics;
    return t;
}

TopicSet Pipeline::expand_topics(TopicSet topics) const
{
    if (topics.seed_topics.empty())
        throw Error(ErrorCode::EmptyTopics, "nothing to expand");
    topics.expanded_topics = topics.seed_topics;
    topics.expansion_degraded = false;
    std::vector<std::string> extra;
    try {
        llm::ChatRequest req;
        req.template_id = llm::TemplateId::TopicExpansion;
        req.variables["topics"] = join(topics.seed_topics, ", ");
        req.variables["text"] = join(topics.seed_topics, ", ");
        req.max_tokens = 256;
        extra = llm::parse_topic_list(gateway_.chat(req), kMaxTopics * 2);
    } catch (const Error&) {
        topics.expansion_degraded = true;
        return topics;
    }
    for (auto& t : extra) {
        if (topics.expanded_topics.size() >= kMaxTopics)
            break;
        if (std::find(topics.expanded_topics.begin(), topics.expanded_topics.end(), t) ==
            topics.expanded_topics.end())
            topics.expanded_topics.push_back(std::move(t));
    }
    return topics;
}

RelevantLawSet Pipeline::retrieve_relevant(const TopicSet& topics, Date as_of, std::size_t k) const
{
    if (k == 0)
        throw Error(ErrorCode::InvalidArgument, "k must be positive");
    if (index_.size() == 0)
        throw Error(ErrorCode::EmptyIndex, "vector index is empty");
    const auto& list = topics.expanded_topics.empty() ? topics.seed_topics : topics.expanded_topics;
    if (list.empty())
        throw Error(ErrorCode::EmptyTopics, "no topics to retrieve with");
    const auto query = gateway_.embed(join(list, " "));

    const auto in_force = store_.in_force_laws(as_of);
    const std::set<std::string> allowed(in_force.begin(), in_force.end());

    RelevantLawSet out;
    out.as_of = as_of;
    std::size_t fetch = std::min(kOverFetch * k, index_.size());
    while (true) {
        const auto hits = index_.search(query, fetch, std::max(fetch, vector::kDefaultEfSearch));
        out.entries.clear();
        for (const auto& h : hits) {
            if (!allowed.contains(h.id))
                continue;
            out.entries.push_back({h.id, store_.node(h.id).properties.title, 1.0 - h.distance});
        }
        if (out.entries.size() >= k || fetch >= index_.size())
            break;
        fetch = std::min(fetch * 2, index_.size());
    }
    std::sort(out.entries.begin(), out.entries.end(), [](const RelevantLaw& a, const RelevantLaw& b) {
        return a.similarity != b.similarity ? a.similarity > b.similarity : a.law_id < b.law_id;
    });
    if (out.entries.size() > k)
        out.entries.resize(k);
    return out;
}

std::vector<FoundationCitation> Pipeline::rank_foundations(const RelevantLawSet& relevant) const
{
    std::vector<std::string> ids;
    for (const auto& e : relevant.entries)
        ids.push_back(e.law_id);
    return rag::rank_foundations(store_, ids);
}

LandscapeResult Pipeline::landscape(std::string_view input, Date as_of, std::size_t k) const
{
    LandscapeResult r;
    r.input_text = std::string(trim(input));
    r.topics = expand_topics(extract_topics(input));
    r.relevant_laws = retrieve_relevant(r.topics, as_of, k);
    r.foundations = rank_foundations(r.relevant_laws);
    return r;
}

std::optional<text::ReadabilityProfile> Pipeline::law_profile(std::string_view law_id) const
{
    if (profiles_) {
        const auto it = profiles_->find(law_id);
        if (it != profiles_->end())
            return it->second;
        return std::nullopt;
    }
    const auto* node = store_.find(law_id);
    if (!node || node->kind != graph::NodeKind::Law || node->properties.stub)
        return std::nullopt;
    try {
        return text::profile(node->properties.text);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::EmptyText)
            return std::nullopt;
        throw;
    }
}

DraftReport Pipeline::analyze_draft(const ingest::DraftProposal& draft, Date as_of, std::size_t k,
                                    report::Locale locale) const
{
    if (trim(draft.title).empty() && trim(draft.text).empty())
        throw Error(ErrorCode::EmptyDraft, "draft has neither title nor text");
    DraftReport r;
    r.draft_id = draft.draft_id;
    r.title = draft.title;
    r.profile = text::profile(trim(draft.text).empty() ? draft.title : draft.text);
    r.topics = extract_topics(trim(draft.title).empty() ? draft.text : draft.title);
    r.comparison_laws = retrieve_relevant(r.topics, as_of, k);

    std::vector<text::ReadabilityProfile> others;
    for (const auto& e : r.comparison_laws.entries)
        if (auto p = law_profile(e.law_id))
            others.push_back(*p);
    const std::string descriptor =
        locale == report::Locale::It
            ? "leggi in vigore al " + as_of.iso() + " più affini agli ambiti del progetto"
            : "laws in force on " + as_of.iso() + " closest to the draft topics";
    r.comparison = report::comparison_stats(r.profile, others, draft.title.empty() ? draft.draft_id : draft.title,
                                            descriptor);
    auto polished = report::polish_report(report::render_report(r.comparison, locale), &gateway_);
    r.report_text = std::move(polished.text);
    r.report_fallback = polished.fallback;
    r.fallback_reason = std::move(polished.fallback_reason);
    return r;
}

vector::HnswIndex build_law_index(const graph::GraphStore& store, const vector::Embedder& embedder,
                                  vector::HnswParams params)
{
    params.dimension = embedder.dimension();
    vector::HnswIndex index(params);
    for (const auto& [id, node] : store.nodes()) {
        if (node.kind != graph::NodeKind::Law || node.properties.stub)
            continue;
        const auto input = vector::embedding_input(node.properties.title, node.properties.text);
        if (trim(input).empty())
            continue;
        index.insert(id, embedder.embed(input));
    }
    index.freeze();
    return index;
}

json to_json(const TopicSet& t)
{
    return json{{"seed", t.seed_topics}, {"expanded", t.expanded_topics}, {"expansion_degraded", t.expansion_degraded}};
}

json to_json(const RelevantLawSet& r)
{
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back({{"law_id", e.law_id}, {"title", e.title}, {"similarity", round_to(e.similarity)}});
    return json{{"as_of", r.as_of.iso()}, {"entries", entries}};
}

json to_json(const std::vector<FoundationCitation>& f)
{
    json out = json::array();
    for (const auto& c : f)
        out.push_back({{"target_id", c.target_id},
                       {"target_kind", graph::to_string(c.target_kind)},
                       {"citing_count", c.citing_count},
                       {"relative_frequency", round_to(c.relative_frequency)}});
    return out;
}

json to_json(const LandscapeResult& r)
{
    return json{{"input", r.input_text},
                {"topics", to_json(r.topics)},
                {"relevant_laws", to_json(r.relevant_laws)},
                {"foundations", to_json(r.foundations)}};
}

json to_json(const DraftReport& r)
{
    json profile = r.profile;
    json comparison = r.comparison;
    return json{{"draft_id", r.draft_id},
                {"title", r.title},
                {"profile", profile},
                {"topics", to_json(r.topics)},
                {"comparison_laws", to_json(r.comparison_laws)},
                {"comparison", comparison},
                {"report", r.report_text},
                {"report_fallback", r.report_fallback},
                {"fallback_reason", r.fallback_reason}};
}

} // namespace legis::rag
