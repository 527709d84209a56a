#pragma once

#include "legis/core/date.hpp"
#include "legis/graph/graph_store.hpp"
#include "legis/ingest/document.hpp"
#include "legis/llm/gateway.hpp"
#include "legis/report/report.hpp"
#include "legis/text/metrics.hpp"
#include "legis/vector/hnsw.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace legis::rag {

inline constexpr std::size_t kDefaultK = 20;
inline constexpr std::size_t kMaxSeedTopics = 10;
inline constexpr std::size_t kMaxTopics = 20;
inline constexpr std::size_t kOverFetch = 4;

struct TopicSet {
    std::vector<std::string> seed_topics;
    std::vector<std::string> expanded_topics; ///< seed first, then additions
    bool expansion_degraded = false;          ///< gateway failed; expanded == seed

    friend bool operator==(const TopicSet&, const TopicSet&) = default;
};

struct RelevantLaw {
    std::string law_id;
    std::string title;
    double similarity = 0; ///< 1 - cosine distance

    friend bool operator==(const RelevantLaw&, const RelevantLaw&) = default;
};

struct RelevantLawSet {
    Date as_of;
    std::vector<RelevantLaw> entries; ///< similarity desc, id asc

    friend bool operator==(const RelevantLawSet&, const RelevantLawSet&) = default;
};

struct FoundationCitation {
    std::string target_id;
    graph::NodeKind target_kind = graph::NodeKind::Law;
    std::size_t citing_count = 0;
    double relative_frequency = 0; ///< citing_count / |relevant|

    friend bool operator==(const FoundationCitation&, const FoundationCitation&) = default;
};

struct LandscapeResult {
    std::string input_text;
    TopicSet topics;
    RelevantLawSet relevant_laws;
    std::vector<FoundationCitation> foundations;
};

struct DraftReport {
    std::string draft_id;
    std::string title;
    text::ReadabilityProfile profile;
    TopicSet topics;
    RelevantLawSet comparison_laws;
    report::StatsBundle comparison;
    std::string report_text;
    bool report_fallback = false;
    std::string fallback_reason;
};

using ProfileCache = std::map<std::string, text::ReadabilityProfile, std::less<>>;

/// Profiles of every non-stub law with analyzable text.
ProfileCache build_profile_cache(const graph::GraphStore& store);

/// Foundation ranking over a plain id list: distinct citing laws per
/// preamble CITES target, relative frequency over the list size.
std::vector<FoundationCitation> rank_foundations(const graph::GraphStore& store,
                                                 const std::vector<std::string>& law_ids);

/// Read-only orchestration over a frozen graph and index. Safe to share
/// across threads as long as the gateway is.
class Pipeline {
public:
    Pipeline(const graph::GraphStore& store, const vector::HnswIndex& index, llm::LlmGateway& gateway,
             const ProfileCache* profiles = nullptr);

    /// Throws Error{EmptyInput} before any gateway call, Error{EmptyTopics}
    /// when the completion holds no topics; gateway errors propagate.
    [[nodiscard]] TopicSet extract_topics(std::string_view input) const;
    /// Best effort: gateway failures leave expanded == seed and set the flag.
    [[nodiscard]] TopicSet expand_topics(TopicSet topics) const;
    /// Embeds the joined expanded topics, searches with over-fetch, keeps
    /// laws in force at `as_of`. Throws Error{InvalidArgument} for k == 0,
    /// Error{EmptyIndex}.
    [[nodiscard]] RelevantLawSet retrieve_relevant(const TopicSet& topics, Date as_of, std::size_t k) const;
    [[nodiscard]] std::vector<FoundationCitation> rank_foundations(const RelevantLawSet& relevant) const;

    [[nodiscard]] LandscapeResult landscape(std::string_view input, Date as_of, std::size_t k = kDefaultK) const;

    /// Topics from the title (the text when untitled), no expansion.
    /// Throws Error{EmptyDraft}, Error{EmptyComparisonSet}.
    [[nodiscard]] DraftReport analyze_draft(const ingest::DraftProposal& draft, Date as_of,
                                            std::size_t k = kDefaultK,
                                            report::Locale locale = report::Locale::It) const;

    /// Profile of a stored law, from the cache when present.
    [[nodiscard]] std::optional<text::ReadabilityProfile> law_profile(std::string_view law_id) const;

private:
    const graph::GraphStore& store_;
    const vector::HnswIndex& index_;
    llm::LlmGateway& gateway_;
    const ProfileCache* profiles_;
};

/// Builds the ANN index over non-stub laws: title plus the first 2048 code
/// points of the text. Returns a frozen index.
vector::HnswIndex build_law_index(const graph::GraphStore& store, const vector::Embedder& embedder,
                                  vector::HnswParams params = {});

nlohmann::json to_json(const TopicSet& t);
nlohmann::json to_json(const RelevantLawSet& r);
nlohmann::json to_json(const std::vector<FoundationCitation>& f);
nlohmann::json to_json(const LandscapeResult& r);
nlohmann::json to_json(const DraftReport& r);

} // namespace legis::rag
