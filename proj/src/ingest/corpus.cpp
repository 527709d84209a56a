#include "legis/ingest/corpus.hpp"

#include "legis/core/error.hpp"
#include "legis/core/strings.hpp"
#include "legis/ingest/akn.hpp"
#include "legis/ingest/uri.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace legis::ingest {

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::IoError, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

LawDocument parse_text_law(std::string_view text, std::string_view law_id, std::string_view title,
                           std::optional<Date> publication_date)
{
    static const std::regex kArticleLine(R"(^\s*(?:Art\.|Articolo)\s*([0-9]+(?:[- ]?[A-Za-z]+)?)\.?\s*(.*)$)",
                                         std::regex::icase);
    LawDocument doc;
    doc.law_id = std::string(law_part(normalize_uri(law_id).uri));
    doc.title = collapse_whitespace(title);
    doc.publication_date =
        publication_date ? *publication_date : Date::parse(split(doc.law_id, '/')[4]);

    std::string full;
    std::vector<std::pair<std::string, std::string>> raw_articles;
    for (const auto& line : split(text, '\n')) {
        const std::string clean = collapse_whitespace(line);
        if (clean.empty())
            continue;
        if (!full.empty())
            full.push_back('\n');
        full += clean;
        std::smatch m;
        if (std::regex_match(clean, m, kArticleLine)) {
            raw_articles.emplace_back(m[1].str(), m[2].str());
        } else if (!raw_articles.empty()) {
            auto& body = raw_articles.back().second;
            if (!body.empty())
                body.push_back('\n');
            body += clean;
        }
    }
    doc.full_text = std::move(full);
    std::set<std::string> seen;
    for (auto& [num, body] : raw_articles) {
        ArticleUnit unit;
        unit.number = article_label(num);
        if (unit.number.empty() || body.empty() || !seen.insert(unit.number).second)
            continue;
        unit.article_id = make_article_id(doc.law_id, unit.number);
        unit.text = std::move(body);
        doc.articles.push_back(std::move(unit));
    }
    std::stable_sort(doc.articles.begin(), doc.articles.end(),
                     [](const ArticleUnit& a, const ArticleUnit& b) {
                         return article_number_less(a.number, b.number);
                     });
    return doc;
}

IngestStats scan_corpus(const std::filesystem::path& manifest,
                        const std::function<void(LawDocument&&)>& sink,
                        std::vector<IngestIssue>* issues)
{
    std::ifstream in(manifest);
    if (!in)
        throw Error(ErrorCode::ManifestNotFound, "manifest not found: " + manifest.string());
    const auto base = manifest.parent_path();

    IngestStats stats;
    std::set<std::string> seen_ids;
    auto fail = [&](std::size_t line_no, std::string path, std::string message) {
        ++stats.failed;
        if (issues)
            issues->push_back({line_no, std::move(path), std::move(message)});
    };

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto content = trim(line);
        if (content.empty() || content.front() == '#')
            continue;

        nlohmann::json record;
        try {
            record = nlohmann::json::parse(content);
        } catch (const nlohmann::json::exception& e) {
            fail(line_no, "", std::string("bad manifest record: ") + e.what());
            continue;
        }
        if (!record.is_object() || !record.contains("path") || !record["path"].is_string()) {
            fail(line_no, "", "manifest record without path");
            continue;
        }
        const std::string rel = record["path"].get<std::string>();
        const std::string format = record.value("format", std::string("akn-xml"));
        if (format != "akn-xml" && format != "text") {
            ++stats.skipped;
            if (issues)
                issues->push_back({line_no, rel, "unknown format '" + format + "'"});
            continue;
        }

        std::filesystem::path path(rel);
        if (path.is_relative())
            path = base / path;
        try {
            const std::string bytes = read_file(path);
            LawDocument doc;
            if (format == "akn-xml") {
                doc = parse_akn_document(bytes);
            } else {
                if (!record.contains("law_id"))
                    throw Error(ErrorCode::MissingIdentifier, "text record without law_id");
                std::optional<Date> date;
                if (record.contains("publication_date"))
                    date = Date::parse(record["publication_date"].get<std::string>());
                doc = parse_text_law(bytes, record["law_id"].get<std::string>(),
                                     record.value("title", std::string()), date);
            }
            if (!seen_ids.insert(doc.law_id).second)
                throw Error(ErrorCode::InvalidArgument, "duplicate law id " + doc.law_id);
            ++stats.parsed;
            sink(std::move(doc));
        } catch (const Error& e) {
            fail(line_no, rel, std::string(to_string(e.code())) + ": " + e.what());
        } catch (const nlohmann::json::exception& e) {
            fail(line_no, rel, e.what());
        }
    }
    return stats;
}

ScanResult scan_corpus(const std::filesystem::path& manifest)
{
    ScanResult result;
    result.stats = scan_corpus(
        manifest, [&](LawDocument&& doc) { result.documents.push_back(std::move(doc)); },
        &result.issues);
    return result;
}

} // namespace legis::ingest
