#include "legis/ingest/akn.hpp"

#include "legis/core/error.hpp"
#include "legis/core/strings.hpp"
#include "legis/ingest/uri.hpp"

#include <expat.h>

#include <algorithm>
#include <memory>
#include <optional>
#include <set>

namespace legis::ingest {

namespace {

const std::set<std::string_view> kInlineElements = {
    "ref",  "mref", "rref",    "i",       "b",       "u",        "sup",       "sub",
    "span", "date", "term",    "def",     "inline",  "abbr",     "docNumber", "docDate",
    "docType", "entity", "person", "organization", "location", "quantity", "noteRef", "a"};

std::string_view local_name(const XML_Char* qname)
{
    std::string_view name(qname);
    if (const auto colon = name.rfind(':'); colon != std::string_view::npos)
        name.remove_prefix(colon + 1);
    return name;
}

std::optional<std::string> attribute(const XML_Char** attrs, std::string_view wanted)
{
    for (int i = 0; attrs[i] != nullptr; i += 2)
        if (local_name(attrs[i]) == wanted)
            return std::string(attrs[i + 1]);
    return std::nullopt;
}

/// Collapses whitespace per line and drops blank lines.
std::string normalize_block_text(std::string_view raw)
{
    std::string out;
    for (const auto& line : split(raw, '\n')) {
        std::string collapsed = collapse_whitespace(line);
        if (collapsed.empty())
            continue;
        if (!out.empty())
            out.push_back('\n');
        out += collapsed;
    }
    return out;
}

struct PendingArticle {
    std::string num_text;
    std::string heading_text;
    std::string body_text;
    std::optional<std::string> eid;
    bool has_heading = false;
};

struct PendingRef {
    std::optional<std::size_t> article;
    std::string href;
    RefKind kind = RefKind::Body;
    std::optional<std::string> role;
    std::optional<std::string> date;
};

class AknHandler {
public:
    void start(std::string_view name, const XML_Char** attrs)
    {
        separate(name);
        if (name == "meta")
            ++meta_depth_;
        else if (name == "FRBRWork")
            ++work_depth_;
        else if (name == "preface")
            ++preface_depth_;
        else if (name == "docTitle")
            ++title_depth_;
        else if (name == "preamble")
            ++preamble_depth_;
        else if (name == "body")
            ++body_depth_;

        if (meta_depth_ > 0) {
            if (work_depth_ > 0 && name == "FRBRuri" && !frbr_uri_)
                frbr_uri_ = attribute(attrs, "value");
            else if (work_depth_ > 0 && name == "FRBRdate" && !frbr_date_)
                frbr_date_ = attribute(attrs, "date");
            else if (name == "keyword" && !ministry_) {
                const auto dict = attribute(attrs, "dictionary");
                if (dict && (ascii_lower(*dict) == "ministry" || ascii_lower(*dict) == "ministero"))
                    ministry_ = attribute(attrs, "value");
            }
            return;
        }

        if (name == "article") {
            articles_.emplace_back();
            articles_.back().eid = attribute(attrs, "eId");
            article_stack_.push_back(articles_.size() - 1);
        } else if (!article_stack_.empty() && name == "num" && num_depth_ == 0 &&
                   articles_[article_stack_.back()].num_text.empty()) {
            ++num_depth_;
        } else if (num_depth_ > 0) {
            ++num_depth_;
        } else if (!article_stack_.empty() && name == "heading" && heading_depth_ == 0) {
            ++heading_depth_;
            articles_[article_stack_.back()].has_heading = true;
        } else if (heading_depth_ > 0) {
            ++heading_depth_;
        }

        if (name == "ref") {
            if (auto href = attribute(attrs, "href")) {
                PendingRef ref;
                ref.href = std::move(*href);
                ref.kind = preamble_depth_ > 0 ? RefKind::Preamble : RefKind::Body;
                if (!article_stack_.empty() && ref.kind == RefKind::Body)
                    ref.article = article_stack_.back();
                ref.role = attribute(attrs, "role");
                ref.date = attribute(attrs, "date");
                refs_.push_back(std::move(ref));
            }
        }
    }

    void end(std::string_view name)
    {
        if (meta_depth_ == 0) {
            if (num_depth_ > 0)
                --num_depth_;
            else if (heading_depth_ > 0)
                --heading_depth_;
            else if (name == "article" && !article_stack_.empty())
                article_stack_.pop_back();
        }
        if (name == "meta")
            --meta_depth_;
        else if (name == "FRBRWork")
            --work_depth_;
        else if (name == "preface")
            --preface_depth_;
        else if (name == "docTitle")
            --title_depth_;
        else if (name == "preamble")
            --preamble_depth_;
        else if (name == "body")
            --body_depth_;
        separate(name);
    }

    void text(std::string_view data)
    {
        if (meta_depth_ > 0)
            return;
        full_text_ += data;
        if (title_depth_ > 0)
            title_ += data;
        if (article_stack_.empty())
            return;
        auto& art = articles_[article_stack_.back()];
        if (num_depth_ > 0)
            art.num_text += data;
        else if (heading_depth_ > 0)
            art.heading_text += data;
        else
            art.body_text += data;
    }

    LawDocument finish() const
    {
        if (!frbr_uri_)
            throw Error(ErrorCode::MissingIdentifier, "no FRBRWork/FRBRuri in document");
        LawDocument doc;
        try {
            doc.law_id = std::string(law_part(normalize_uri(*frbr_uri_).uri));
        } catch (const Error& e) {
            throw Error(ErrorCode::MissingIdentifier,
                        "FRBRuri is not an act identifier: " + std::string(e.what()));
        }
        if (frbr_date_) {
            doc.publication_date = Date::parse(trim(*frbr_date_));
        } else {
            // /akn/{country}/act/{date}/{number}
            doc.publication_date = Date::parse(split(doc.law_id, '/')[4]);
        }
        doc.title = collapse_whitespace(title_);
        if (ministry_ && !trim(*ministry_).empty())
            doc.ministry_domain = std::string(trim(*ministry_));
        doc.full_text = normalize_block_text(full_text_);

        std::vector<std::optional<std::size_t>> kept(articles_.size());
        std::set<std::string> seen_numbers;
        for (std::size_t i = 0; i < articles_.size(); ++i) {
            const auto& pending = articles_[i];
            std::string number = article_label(pending.num_text);
            if (number.empty() && pending.eid) {
                std::string eid = ascii_lower(*pending.eid);
                if (const auto p = eid.rfind("art_"); p != std::string::npos)
                    number = article_label(eid.substr(p + 4));
            }
            if (number.empty())
                number = std::to_string(i + 1);
            ArticleUnit unit;
            unit.number = number;
            unit.article_id = make_article_id(doc.law_id, number);
            if (pending.has_heading) {
                std::string heading = collapse_whitespace(pending.heading_text);
                if (!heading.empty())
                    unit.heading = std::move(heading);
            }
            unit.text = normalize_block_text(pending.body_text);
            if (unit.text.empty() && !unit.heading)
                continue;
            if (!seen_numbers.insert(number).second)
                continue;
            kept[i] = doc.articles.size();
            doc.articles.push_back(std::move(unit));
        }

        for (const auto& ref : refs_) {
            NormalizedUri target;
            try {
                target = normalize_uri(ref.href);
            } catch (const Error&) {
                continue;
            }
            RawReference out;
            out.target_uri = target.uri;
            out.specifies_paragraph = target.specifies_paragraph;
            out.kind = ref.kind;
            out.raw_href = ref.href;
            out.source_unit = doc.law_id;
            if (ref.article && kept[*ref.article])
                out.source_unit = doc.articles[*kept[*ref.article]].article_id;
            if (ref.role) {
                const std::string role = ascii_lower(*ref.role);
                if (role == "abrogates" || role == "abrogation" || role == "repeal") {
                    AbrogationClaim claim;
                    claim.target_uri = std::string(law_part(target.uri));
                    claim.effective_date = ref.date ? Date::parse(trim(*ref.date)) : doc.publication_date;
                    doc.abrogations.push_back(std::move(claim));
                }
            }
            (out.kind == RefKind::Preamble ? doc.preamble_refs : doc.body_refs).push_back(std::move(out));
        }

        std::stable_sort(doc.articles.begin(), doc.articles.end(),
                         [](const ArticleUnit& a, const ArticleUnit& b) {
                             return article_number_less(a.number, b.number);
                         });
        return doc;
    }

private:
    void separate(std::string_view name)
    {
        if (kInlineElements.contains(name))
            return;
        full_text_.push_back('\n');
        if (!article_stack_.empty() && num_depth_ == 0 && heading_depth_ == 0)
            articles_[article_stack_.back()].body_text.push_back('\n');
    }

    int meta_depth_ = 0;
    int work_depth_ = 0;
    int preface_depth_ = 0;
    int title_depth_ = 0;
    int preamble_depth_ = 0;
    int body_depth_ = 0;
    int num_depth_ = 0;
    int heading_depth_ = 0;

    std::optional<std::string> frbr_uri_;
    std::optional<std::string> frbr_date_;
    std::optional<std::string> ministry_;
    std::string title_;
    std::string full_text_;
    std::vector<PendingArticle> articles_;
    std::vector<std::size_t> article_stack_;
    std::vector<PendingRef> refs_;
};

void XMLCALL on_start(void* user, const XML_Char* name, const XML_Char** attrs)
{
    static_cast<AknHandler*>(user)->start(local_name(name), attrs);
}

void XMLCALL on_end(void* user, const XML_Char* name)
{
    static_cast<AknHandler*>(user)->end(local_name(name));
}

void XMLCALL on_text(void* user, const XML_Char* s, int len)
{
    static_cast<AknHandler*>(user)->text(std::string_view(s, static_cast<std::size_t>(len)));
}

struct ParserDeleter {
    void operator()(XML_Parser p) const noexcept { XML_ParserFree(p); }
};

} // namespace

std::string article_label(std::string_view num_text)
{
    std::string s = utf8_lower(collapse_whitespace(num_text));
    std::string_view v = s;
    for (std::string_view prefix : {std::string_view("articolo"), std::string_view("art."),
                                     std::string_view("art")}) {
        if (v.starts_with(prefix)) {
            v.remove_prefix(prefix.size());
            break;
        }
    }
    v = trim(v);
    while (!v.empty() && (v.back() == '.' || v.back() == ')' || v.back() == ':'))
        v.remove_suffix(1);
    v = trim(v);

    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const char c = v[i];
        if (c == ' ' || c == '_') {
            if (!out.empty() && out.back() != '-')
                out.push_back('-');
            continue;
        }
        const bool digit = c >= '0' && c <= '9';
        const bool alpha = c >= 'a' && c <= 'z';
        if (!digit && !alpha && c != '-')
            continue;
        if (alpha && !out.empty() && out.back() >= '0' && out.back() <= '9')
            out.push_back('-');
        out.push_back(c);
    }
    while (!out.empty() && out.back() == '-')
        out.pop_back();
    return out;
}

LawDocument parse_akn_document(std::string_view xml)
{
    std::unique_ptr<std::remove_pointer_t<XML_Parser>, ParserDeleter> parser(
        XML_ParserCreate("UTF-8"));
    if (!parser)
        throw Error(ErrorCode::MalformedXml, "cannot allocate XML parser");
    AknHandler handler;
    XML_SetUserData(parser.get(), &handler);
    XML_SetElementHandler(parser.get(), on_start, on_end);
    XML_SetCharacterDataHandler(parser.get(), on_text);

    if (XML_Parse(parser.get(), xml.data(), static_cast<int>(xml.size()), XML_TRUE) ==
        XML_STATUS_ERROR) {
        throw Error(ErrorCode::MalformedXml,
                    std::string("XML error at line ") +
                        std::to_string(XML_GetCurrentLineNumber(parser.get())) + ": " +
                        XML_ErrorString(XML_GetErrorCode(parser.get())));
    }
    return handler.finish();
}

} // namespace legis::ingest
