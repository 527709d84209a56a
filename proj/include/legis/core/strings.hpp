#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace legis {

/// Hex SHA-256 of the given bytes.
std::string sha256_hex(std::string_view bytes);

/// 64-bit FNV-1a. Stable across platforms; used for feature hashing.
constexpr std::uint64_t fnv1a64(std::string_view bytes) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string_view trim(std::string_view s) noexcept;
std::string ascii_lower(std::string_view s);

/// Lowercases ASCII and the Latin-1 / Latin Extended-A letters used by Italian text.
std::string utf8_lower(std::string_view s);

/// Decodes one UTF-8 code point at `pos`, advancing it. Invalid bytes decode to U+FFFD.
char32_t next_code_point(std::string_view s, std::size_t& pos) noexcept;
void append_utf8(std::string& out, char32_t cp);

/// Alphabetic in ASCII, Latin-1 Supplement, or Latin Extended-A.
bool is_letter(char32_t cp) noexcept;
bool is_apostrophe(char32_t cp) noexcept;

/// Prefix of `s` holding at most `max_code_points` code points.
std::string_view utf8_prefix(std::string_view s, std::size_t max_code_points) noexcept;

/// Collapses runs of whitespace to single spaces and trims.
std::string collapse_whitespace(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

bool starts_with_ci(std::string_view s, std::string_view prefix) noexcept;

/// Fixed-point rendering with at most `max_decimals` decimals, trailing zeros
/// stripped, no locale separators: 2.0 -> "2", 2/3 -> "0.666667".
std::string format_decimal(double value, int max_decimals = 6);

/// Rounds to `decimals` places; used before emitting floats into JSON.
double round_to(double value, int decimals = 6) noexcept;

} // namespace legis
