#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>

namespace legis::text {

/// Word lists driving the part-of-speech heuristics. All entries lowercase.
struct PosLexicons {
    std::set<std::string> pronouns;
    std::set<std::string> adjective_suffixes;
    std::set<std::string> gerund_suffixes;
    /// Words carrying a gerund suffix that are not gerunds ("quando").
    std::set<std::string> gerund_exceptions;
    std::set<std::string> subordinators;
};

/// Parses a word list: one entry per line, `#` comments, blank lines ignored,
/// entries lowercased.
std::set<std::string> parse_word_list(std::string_view content);
std::set<std::string> load_word_list(const std::filesystem::path& path);

/// Shipped Italian defaults (data/lexicons/it).
const PosLexicons& default_pos_lexicons();
const std::set<std::string>& default_abbreviations();
const std::set<std::string>& default_stopwords();

/// Loads `pronouns.txt`, `adjective_suffixes.txt`, `gerund_suffixes.txt`,
/// `gerund_exceptions.txt` (optional) and `subordinators.txt` from `dir`.
/// Throws Error{InvalidArgument} if a required list is empty.
PosLexicons load_pos_lexicons(const std::filesystem::path& dir);

} // namespace legis::text
