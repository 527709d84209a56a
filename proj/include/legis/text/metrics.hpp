#pragma once

#include "legis/text/lexicons.hpp"

#include <json.hpp>

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace legis::text {

/// Splits on `. ! ? ;` followed by whitespace or end of text. A single `.`
/// closing a known abbreviation ("art.", "n.", "d.lgs.") does not split.
std::vector<std::string> split_sentences(std::string_view text);
std::vector<std::string> split_sentences(std::string_view text, const std::set<std::string>& abbreviations);

/// Words are maximal runs of letters; apostrophes separate clitics
/// ("dell'arte" -> "dell", "arte"). Returned lowercased.
std::vector<std::string> words(std::string_view text);

/// Number of vowel groups (accented vowels included), at least 1.
/// Throws Error{NoLetters} when the word has no letters.
int count_syllables_it(std::string_view word);

struct FleschCoefficients {
    double c0 = 206.835;
    double c1 = 1.015;
    double c2 = 84.6;
};

struct PosRatios {
    double gerund_ratio = 0;
    double adjective_ratio = 0;
    double pronoun_ratio = 0;
};

struct EmbeddingIndices {
    double embedding_index = 0;
    double center_embedding_index = 0;
};

enum class PosTag { Other, Pronoun, Gerund, Adjective };

/// Part-of-speech oracle for a lowercased word. Swappable for a real tagger.
class PosTagger {
public:
    virtual ~PosTagger() = default;
    [[nodiscard]] virtual PosTag tag(std::string_view lower_word) const = 0;
};

/// Closed-class pronouns first, then gerund suffixes, then adjective suffixes.
class LexiconTagger final : public PosTagger {
public:
    explicit LexiconTagger(const PosLexicons& lexicons) : lex_(lexicons) {}
    [[nodiscard]] PosTag tag(std::string_view lower_word) const override;

private:
    const PosLexicons& lex_;
};

struct ReadabilityProfile {
    int word_count = 0;
    int sentence_count = 0;
    int letter_count = 0;
    int syllable_count = 0;
    double avg_word_length = 0;     ///< letters per word
    double avg_sentence_length = 0; ///< words per sentence
    double gerund_ratio = 0;
    double adjective_ratio = 0;
    double pronoun_ratio = 0;
    double flesch = 0;
    double gulpease = 0; ///< clamped to [0, 100]
    double embedding_index = 0;
    double center_embedding_index = 0;

    friend bool operator==(const ReadabilityProfile&, const ReadabilityProfile&) = default;
};

/// 89 + (300*S - 10*L) / W, clamped to [0, 100]. Throws Error{EmptyText}.
double gulpease(std::string_view text);
/// c0 - c1*(W/S) - c2*(Y/W), unclamped. Throws Error{EmptyText}.
double flesch(std::string_view text, const FleschCoefficients& coefficients = {});
PosRatios pos_ratios(std::string_view text, const PosLexicons& lexicons);
PosRatios pos_ratios(std::string_view text, const PosTagger& tagger);

/// Per sentence, commas and parentheses split a span into child spans
/// (parenthesized groups recursively). A child whose first word is a
/// subordinator is embedded; it is center-embedded when it neither starts at
/// the parent's first word nor ends at its last. Both indices are totals
/// divided by the sentence count. Throws Error{EmptyText}.
EmbeddingIndices embedding_indices(std::string_view text, const PosLexicons& lexicons);

/// All metrics from one tokenization pass. Throws Error{EmptyText}.
ReadabilityProfile profile(std::string_view text, const PosLexicons& lexicons = default_pos_lexicons());
ReadabilityProfile profile(std::string_view text, const PosLexicons& lexicons, const PosTagger& tagger,
                           const FleschCoefficients& coefficients = {});

void to_json(nlohmann::json& j, const ReadabilityProfile& p);
void from_json(const nlohmann::json& j, ReadabilityProfile& p);

} // namespace legis::text
