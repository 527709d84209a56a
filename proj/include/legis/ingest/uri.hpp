#pragma once

#include <string>
#include <string_view>

namespace legis::ingest {

struct NormalizedUri {
    std::string uri;
    bool specifies_paragraph = false;

    friend bool operator==(const NormalizedUri&, const NormalizedUri&) = default;
};

/// Canonicalizes an act reference to `/akn/{country}/act/{YYYY-MM-DD}/{number}[#art_N]`.
///
/// Accepts bare paths or absolute http(s) URLs, drops trailing slashes and
/// document-subtype segments between `act` and the date
/// (`/akn/it/act/legge/stato/2010-03-15/123`), and drops FRBR expression or
/// manifestation segments after the number. Paragraph fragments (`#com_N`,
/// `#par_N`, `__para_N`) set `specifies_paragraph` and are not kept in `uri`,
/// so references join on article nodes.
///
/// Throws Error{UnparsableHref} when no act pattern is recognizable.
NormalizedUri normalize_uri(std::string_view raw_href);

/// Law part of a canonical URI (everything before '#').
std::string_view law_part(std::string_view canonical_uri) noexcept;

} // namespace legis::ingest
