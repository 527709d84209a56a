#pragma once

#include "legis/ingest/document.hpp"

#include <filesystem>
#include <map>
#include <string>

namespace legis::ingest {

/// Builds a DraftProposal from text plus metadata (`title`, `draft_id`,
/// `proponent`, `submitted_date`). Without a `draft_id`, one is derived from
/// the SHA-256 of title and text: "draft-" + first 16 hex digits.
///
/// Throws Error{EmptyDraft} when both text and title are blank.
DraftProposal parse_draft(std::string_view text, const std::map<std::string, std::string>& metadata);

/// Reads a draft fixture: leading `Key: value` header lines, a blank line,
/// then the draft text.
DraftProposal load_draft_file(const std::filesystem::path& path);

} // namespace legis::ingest
