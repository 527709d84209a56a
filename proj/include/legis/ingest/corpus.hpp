#pragma once

#include "legis/ingest/document.hpp"

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace legis::ingest {

struct IngestStats {
    std::size_t parsed = 0;
    std::size_t failed = 0;
    std::size_t skipped = 0;

    friend bool operator==(const IngestStats&, const IngestStats&) = default;
};

/// One problem encountered while scanning; never aborts the scan.
struct IngestIssue {
    std::size_t line = 0;
    std::string path;
    std::string message;
};

struct ScanResult {
    std::vector<LawDocument> documents;
    IngestStats stats;
    std::vector<IngestIssue> issues;
};

/// Reads a line-delimited manifest of `{"path": "...", "format": "akn-xml" | "text"}`
/// records and emits one LawDocument per parseable file, in manifest order.
///
/// Relative paths resolve against the manifest's directory. Blank lines and
/// `#` comment lines are ignored. Records with an unknown format are counted
/// as skipped; unreadable, unparsable, or duplicate-id files as failed.
///
/// `text` records must also carry `"law_id"` and may carry `"title"` and
/// `"publication_date"`; lines beginning with `Art. N` start a new article.
///
/// Only a missing manifest throws (Error{ManifestNotFound}).
IngestStats scan_corpus(const std::filesystem::path& manifest,
                        const std::function<void(LawDocument&&)>& sink,
                        std::vector<IngestIssue>* issues = nullptr);

ScanResult scan_corpus(const std::filesystem::path& manifest);

/// Builds a LawDocument from a plain-text law body.
LawDocument parse_text_law(std::string_view text, std::string_view law_id, std::string_view title,
                           std::optional<Date> publication_date);

std::string read_file(const std::filesystem::path& path);

} // namespace legis::ingest
