#include "legis/ingest/document.hpp"

#include "legis/core/error.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <limits>
#include <tuple>

namespace legis::ingest {

std::string_view to_string(RefKind kind) noexcept
{
    return kind == RefKind::Preamble ? "preamble" : "body";
}

RefKind parse_ref_kind(std::string_view s)
{
    if (s == "preamble")
        return RefKind::Preamble;
    if (s == "body")
        return RefKind::Body;
    throw Error(ErrorCode::InvalidArgument, "unknown ref kind '" + std::string(s) + "'");
}

std::string make_article_id(std::string_view law_id, std::string_view number)
{
    std::string id(law_id);
    id += "#art_";
    id += number;
    return id;
}

namespace {

constexpr std::array<std::string_view, 15> kLatinOrdinals = {
    "bis",     "ter",     "quater",      "quinquies",    "sexies",
    "septies", "octies",  "novies",      "decies",       "undecies",
    "duodecies", "terdecies", "quaterdecies", "quinquiesdecies", "sexiesdecies"};

std::tuple<long, int, std::string> article_key(std::string_view label)
{
    long n = 0;
    std::size_t i = 0;
    while (i < label.size() && label[i] >= '0' && label[i] <= '9')
        ++i;
    if (i > 0)
        std::from_chars(label.data(), label.data() + i, n);
    else
        n = std::numeric_limits<long>::max();
    std::string_view rest = label.substr(i);
    while (!rest.empty() && (rest.front() == '-' || rest.front() == ' '))
        rest.remove_prefix(1);
    if (rest.empty())
        return {n, -1, ""};
    const auto it = std::find(kLatinOrdinals.begin(), kLatinOrdinals.end(), rest);
    const int ord = it == kLatinOrdinals.end() ? static_cast<int>(kLatinOrdinals.size())
                                               : static_cast<int>(it - kLatinOrdinals.begin());
    return {n, ord, std::string(rest)};
}

} // namespace

bool article_number_less(std::string_view a, std::string_view b)
{
    return article_key(a) < article_key(b);
}

void to_json(nlohmann::json& j, const RawReference& r)
{
    j = {{"source_unit", r.source_unit},
         {"target_uri", r.target_uri},
         {"kind", to_string(r.kind)},
         {"specifies_paragraph", r.specifies_paragraph},
         {"raw_href", r.raw_href}};
}

void from_json(const nlohmann::json& j, RawReference& r)
{
    r.source_unit = j.at("source_unit").get<std::string>();
    r.target_uri = j.at("target_uri").get<std::string>();
    r.kind = parse_ref_kind(j.at("kind").get<std::string>());
    r.specifies_paragraph = j.at("specifies_paragraph").get<bool>();
    r.raw_href = j.at("raw_href").get<std::string>();
}

void to_json(nlohmann::json& j, const ArticleUnit& a)
{
    j = {{"article_id", a.article_id}, {"number", a.number}, {"text", a.text}};
    j["heading"] = a.heading ? nlohmann::json(*a.heading) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, ArticleUnit& a)
{
    a.article_id = j.at("article_id").get<std::string>();
    a.number = j.at("number").get<std::string>();
    a.text = j.at("text").get<std::string>();
    const auto& h = j.at("heading");
    a.heading = h.is_null() ? std::nullopt : std::optional<std::string>(h.get<std::string>());
}

void to_json(nlohmann::json& j, const AbrogationClaim& a)
{
    j = {{"target_uri", a.target_uri}, {"effective_date", a.effective_date.iso()}};
}

void from_json(const nlohmann::json& j, AbrogationClaim& a)
{
    a.target_uri = j.at("target_uri").get<std::string>();
    a.effective_date = Date::parse(j.at("effective_date").get<std::string>());
}

void to_json(nlohmann::json& j, const LawDocument& d)
{
    j = {{"law_id", d.law_id},
         {"title", d.title},
         {"publication_date", d.publication_date.iso()},
         {"articles", d.articles},
         {"preamble_refs", d.preamble_refs},
         {"body_refs", d.body_refs},
         {"abrogations", d.abrogations},
         {"full_text", d.full_text}};
    j["ministry_domain"] =
        d.ministry_domain ? nlohmann::json(*d.ministry_domain) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, LawDocument& d)
{
    d.law_id = j.at("law_id").get<std::string>();
    d.title = j.at("title").get<std::string>();
    d.publication_date = Date::parse(j.at("publication_date").get<std::string>());
    const auto& m = j.at("ministry_domain");
    d.ministry_domain = m.is_null() ? std::nullopt : std::optional<std::string>(m.get<std::string>());
    d.articles = j.at("articles").get<std::vector<ArticleUnit>>();
    d.preamble_refs = j.at("preamble_refs").get<std::vector<RawReference>>();
    d.body_refs = j.at("body_refs").get<std::vector<RawReference>>();
    d.abrogations = j.at("abrogations").get<std::vector<AbrogationClaim>>();
    d.full_text = j.at("full_text").get<std::string>();
}

void to_json(nlohmann::json& j, const DraftProposal& d)
{
    j = {{"draft_id", d.draft_id}, {"title", d.title}, {"text", d.text}};
    j["proponent"] = d.proponent ? nlohmann::json(*d.proponent) : nlohmann::json(nullptr);
    j["submitted_date"] =
        d.submitted_date ? nlohmann::json(d.submitted_date->iso()) : nlohmann::json(nullptr);
}

} // namespace legis::ingest
