#pragma once

#include "legis/ingest/document.hpp"

#include <string_view>

namespace legis::ingest {

/// Parses an Akoma Ntoso act into a LawDocument.
///
/// Interpreted elements: `akomaNtoso`, `act`, `meta` (`FRBRWork/FRBRuri`,
/// `FRBRWork/FRBRdate`, `keyword[@dictionary='ministry']`), `preface/docTitle`,
/// `preamble`, `body`, `article` (`num`, `heading`, content), `ref[@href]`.
/// Everything else is descended into transparently. Namespace prefixes are
/// ignored.
///
/// A `ref` inside `preamble` is a preamble reference; any other `ref` is a
/// body reference, sourced from its enclosing article when there is one.
/// `<ref role="abrogates" href=".." [date="YYYY-MM-DD"]>` additionally
/// declares a repeal effective on `date` (default: publication date).
/// Refs whose href does not normalize are dropped.
///
/// Throws Error{MalformedXml} or Error{MissingIdentifier}.
LawDocument parse_akn_document(std::string_view xml);

/// Reduces a `num` element's text ("Art. 3-bis.", "Articolo 3 bis") to a label ("3-bis").
std::string article_label(std::string_view num_text);

} // namespace legis::ingest
