#pragma once

#include "legis/core/date.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace legis::ingest {

enum class RefKind { Preamble, Body };

std::string_view to_string(RefKind kind) noexcept;
RefKind parse_ref_kind(std::string_view s);

struct RawReference {
    std::string source_unit; ///< law_id or article_id
    std::string target_uri;  ///< normalized
    RefKind kind = RefKind::Body;
    bool specifies_paragraph = false;
    std::string raw_href;

    friend bool operator==(const RawReference&, const RawReference&) = default;
};

struct ArticleUnit {
    std::string article_id; ///< law_id + "#art_" + number
    std::string number;     ///< "3", "3-bis"
    std::optional<std::string> heading;
    std::string text;

    friend bool operator==(const ArticleUnit&, const ArticleUnit&) = default;
};

/// Explicit repeal declared by a document: `<ref role="abrogates" ...>`.
struct AbrogationClaim {
    std::string target_uri;
    Date effective_date;

    friend bool operator==(const AbrogationClaim&, const AbrogationClaim&) = default;
};

struct LawDocument {
    std::string law_id;
    std::string title;
    Date publication_date;
    std::optional<std::string> ministry_domain;
    std::vector<ArticleUnit> articles;
    std::vector<RawReference> preamble_refs;
    std::vector<RawReference> body_refs;
    std::vector<AbrogationClaim> abrogations;
    std::string full_text;

    friend bool operator==(const LawDocument&, const LawDocument&) = default;
};

struct DraftProposal {
    std::string draft_id;
    std::string title;
    std::string text;
    std::optional<std::string> proponent;
    std::optional<Date> submitted_date;

    friend bool operator==(const DraftProposal&, const DraftProposal&) = default;
};

std::string make_article_id(std::string_view law_id, std::string_view number);

/// Orders article labels numerically on the leading integer, then by suffix
/// ("3" < "3-bis" < "3-ter" < "10").
bool article_number_less(std::string_view a, std::string_view b);

void to_json(nlohmann::json& j, const RawReference& r);
void from_json(const nlohmann::json& j, RawReference& r);
void to_json(nlohmann::json& j, const ArticleUnit& a);
void from_json(const nlohmann::json& j, ArticleUnit& a);
void to_json(nlohmann::json& j, const AbrogationClaim& a);
void from_json(const nlohmann::json& j, AbrogationClaim& a);
void to_json(nlohmann::json& j, const LawDocument& d);
void from_json(const nlohmann::json& j, LawDocument& d);
void to_json(nlohmann::json& j, const DraftProposal& d);

} // namespace legis::ingest
