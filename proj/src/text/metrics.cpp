#include "legis/text/metrics.hpp"

#include "legis/core/error.hpp"
#include "legis/core/strings.hpp"

#include <algorithm>

namespace legis::text {

namespace {

bool is_space(char c)
{
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_terminator(char c)
{
    return c == '.' || c == '!' || c == '?' || c == ';';
}

bool is_closer(char c)
{
    return c == ')' || c == '"' || c == '\'' || c == ']';
}

bool is_ascii_alpha(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

/// The ASCII token ending at the '.' at `dot`, e.g. "d.lgs." or "art.".
std::string abbreviation_candidate(std::string_view text, std::size_t dot)
{
    std::size_t b = dot;
    while (b > 0 && (is_ascii_alpha(text[b - 1]) || text[b - 1] == '.'))
        --b;
    return ascii_lower(text.substr(b, dot - b + 1));
}

bool is_vowel(char32_t cp)
{
    switch (cp) {
    case 'a': case 'e': case 'i': case 'o': case 'u':
    case U'à': case U'á': case U'â': case U'ä':
    case U'è': case U'é': case U'ê': case U'ë':
    case U'ì': case U'í': case U'î': case U'ï':
    case U'ò': case U'ó': case U'ô': case U'ö':
    case U'ù': case U'ú': case U'û': case U'ü':
        return true;
    default:
        return false;
    }
}

int letter_count(std::string_view word)
{
    int n = 0;
    std::size_t pos = 0;
    while (pos < word.size())
        if (is_letter(next_code_point(word, pos)))
            ++n;
    return n;
}

enum class ItemKind { Word, Comma, Open, Close };

struct Item {
    ItemKind kind;
    int word_index = -1; ///< for Word
    std::string lower;   ///< for Word
};

/// Words, commas and parentheses of one sentence, in order.
std::vector<Item> sentence_items(std::string_view sentence)
{
    std::vector<Item> items;
    std::string current;
    int next_word = 0;
    const auto flush = [&] {
        if (!current.empty()) {
            items.push_back({ItemKind::Word, next_word++, utf8_lower(current)});
            current.clear();
        }
    };
    std::size_t pos = 0;
    while (pos < sentence.size()) {
        const std::size_t start = pos;
        const char32_t cp = next_code_point(sentence, pos);
        if (is_letter(cp)) {
            current.append(sentence.substr(start, pos - start));
            continue;
        }
        flush();
        if (cp == ',')
            items.push_back({ItemKind::Comma, -1, {}});
        else if (cp == '(' || cp == '[')
            items.push_back({ItemKind::Open, -1, {}});
        else if (cp == ')' || cp == ']')
            items.push_back({ItemKind::Close, -1, {}});
    }
    flush();
    return items;
}

struct SpanCounts {
    int embedded = 0;
    int center = 0;
};

void analyze_span(const std::vector<Item>& items, std::size_t b, std::size_t e,
                  const std::set<std::string>& subordinators, SpanCounts& counts)
{
    struct Child {
        std::size_t b, e;
        bool paren;
    };
    std::vector<Child> children;
    bool delimited = false;
    int depth = 0;
    std::size_t piece_start = b;
    std::size_t paren_start = b;
    for (std::size_t i = b; i < e; ++i) {
        const auto kind = items[i].kind;
        if (depth == 0) {
            if (kind == ItemKind::Comma) {
                delimited = true;
                children.push_back({piece_start, i, false});
                piece_start = i + 1;
            } else if (kind == ItemKind::Open) {
                delimited = true;
                children.push_back({piece_start, i, false});
                paren_start = i + 1;
                depth = 1;
            }
        } else if (kind == ItemKind::Open) {
            ++depth;
        } else if (kind == ItemKind::Close && --depth == 0) {
            children.push_back({paren_start, i, true});
            piece_start = i + 1;
        }
    }
    if (depth > 0)
        children.push_back({paren_start, e, true});
    else
        children.push_back({piece_start, e, false});
    if (!delimited)
        return;

    const auto word_bounds = [&](std::size_t from, std::size_t to) -> std::pair<int, int> {
        int first = -1, last = -1;
        for (std::size_t i = from; i < to; ++i)
            if (items[i].kind == ItemKind::Word) {
                if (first < 0)
                    first = items[i].word_index;
                last = items[i].word_index;
            }
        return {first, last};
    };
    const auto [parent_first, parent_last] = word_bounds(b, e);

    for (const auto& child : children) {
        std::size_t first_word_item = child.b;
        while (first_word_item < child.e && items[first_word_item].kind != ItemKind::Word)
            ++first_word_item;
        if (first_word_item == child.e)
            continue;
        const auto [first, last] = word_bounds(child.b, child.e);
        if (subordinators.contains(items[first_word_item].lower)) {
            ++counts.embedded;
            if (first != parent_first && last != parent_last)
                ++counts.center;
        }
        if (child.paren)
            analyze_span(items, child.b, child.e, subordinators, counts);
    }
}

/// Everything the metric formulas need, from a single pass.
struct TextStats {
    int words = 0;
    int sentences = 0;
    int letters = 0;
    int syllables = 0;
    int pronouns = 0;
    int gerunds = 0;
    int adjectives = 0;
    SpanCounts spans;
};

TextStats analyze(std::string_view text, const PosLexicons& lexicons, const PosTagger& tagger)
{
    TextStats stats;
    for (const auto& sentence : split_sentences(text)) {
        const auto items = sentence_items(sentence);
        bool has_word = false;
        for (const auto& item : items) {
            if (item.kind != ItemKind::Word)
                continue;
            has_word = true;
            ++stats.words;
            stats.letters += letter_count(item.lower);
            stats.syllables += count_syllables_it(item.lower);
            switch (tagger.tag(item.lower)) {
            case PosTag::Pronoun: ++stats.pronouns; break;
            case PosTag::Gerund: ++stats.gerunds; break;
            case PosTag::Adjective: ++stats.adjectives; break;
            case PosTag::Other: break;
            }
        }
        if (!has_word)
            continue;
        ++stats.sentences;
        analyze_span(items, 0, items.size(), lexicons.subordinators, stats.spans);
    }
    if (stats.words == 0 || stats.sentences == 0)
        throw Error(ErrorCode::EmptyText, "text has no words");
    return stats;
}

double gulpease_of(const TextStats& s)
{
    const double raw = 89.0 + (300.0 * s.sentences - 10.0 * s.letters) / s.words;
    return std::clamp(raw, 0.0, 100.0);
}

double flesch_of(const TextStats& s, const FleschCoefficients& c)
{
    return c.c0 - c.c1 * (static_cast<double>(s.words) / s.sentences) -
           c.c2 * (static_cast<double>(s.syllables) / s.words);
}

} // namespace

std::vector<std::string> split_sentences(std::string_view text)
{
    return split_sentences(text, default_abbreviations());
}

std::vector<std::string> split_sentences(std::string_view text, const std::set<std::string>& abbreviations)
{
    std::vector<std::string> sentences;
    const auto emit = [&](std::size_t b, std::size_t e) {
        const auto s = trim(text.substr(b, e - b));
        if (!s.empty())
            sentences.emplace_back(s);
    };
    std::size_t start = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_terminator(text[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < text.size() && is_terminator(text[j]))
            ++j;
        const bool single_dot = j - i == 1 && text[i] == '.';
        while (j < text.size() && is_closer(text[j]))
            ++j;
        const bool boundary = j == text.size() || is_space(text[j]);
        if (boundary && single_dot && abbreviations.contains(abbreviation_candidate(text, i))) {
            i = j;
            continue;
        }
        if (boundary) {
            emit(start, j);
            start = j;
        }
        i = j;
    }
    emit(start, text.size());
    return sentences;
}

std::vector<std::string> words(std::string_view text)
{
    std::vector<std::string> out;
    for (const auto& sentence : split_sentences(text))
        for (auto& item : sentence_items(sentence))
            if (item.kind == ItemKind::Word)
                out.push_back(std::move(item.lower));
    return out;
}

int count_syllables_it(std::string_view word)
{
    int groups = 0;
    int letters = 0;
    bool in_vowel_group = false;
    const std::string lower = utf8_lower(word);
    std::size_t pos = 0;
    while (pos < lower.size()) {
        const char32_t cp = next_code_point(lower, pos);
        if (!is_letter(cp))
            continue;
        ++letters;
        const bool vowel = is_vowel(cp);
        if (vowel && !in_vowel_group)
            ++groups;
        in_vowel_group = vowel;
    }
    if (letters == 0)
        throw Error(ErrorCode::NoLetters, "word has no letters");
    return std::max(groups, 1);
}

PosTag LexiconTagger::tag(std::string_view lower_word) const
{
    const std::string w(lower_word);
    if (lex_.pronouns.contains(w))
        return PosTag::Pronoun;
    const auto has_suffix = [&](const std::set<std::string>& suffixes) {
        return std::any_of(suffixes.begin(), suffixes.end(), [&](const std::string& s) {
            // Require a stem of at least two bytes so bare suffixes do not match.
            return w.size() >= s.size() + 2 && std::string_view(w).ends_with(s);
        });
    };
    if (!lex_.gerund_exceptions.contains(w) && has_suffix(lex_.gerund_suffixes))
        return PosTag::Gerund;
    if (has_suffix(lex_.adjective_suffixes))
        return PosTag::Adjective;
    return PosTag::Other;
}

double gulpease(std::string_view text)
{
    const LexiconTagger tagger(default_pos_lexicons());
    return gulpease_of(analyze(text, default_pos_lexicons(), tagger));
}

double flesch(std::string_view text, const FleschCoefficients& coefficients)
{
    const LexiconTagger tagger(default_pos_lexicons());
    return flesch_of(analyze(text, default_pos_lexicons(), tagger), coefficients);
}

PosRatios pos_ratios(std::string_view text, const PosLexicons& lexicons)
{
    return pos_ratios(text, LexiconTagger(lexicons));
}

PosRatios pos_ratios(std::string_view text, const PosTagger& tagger)
{
    const auto s = analyze(text, default_pos_lexicons(), tagger);
    return {static_cast<double>(s.gerunds) / s.words, static_cast<double>(s.adjectives) / s.words,
            static_cast<double>(s.pronouns) / s.words};
}

EmbeddingIndices embedding_indices(std::string_view text, const PosLexicons& lexicons)
{
    const auto s = analyze(text, lexicons, LexiconTagger(lexicons));
    return {static_cast<double>(s.spans.embedded) / s.sentences,
            static_cast<double>(s.spans.center) / s.sentences};
}

ReadabilityProfile profile(std::string_view text, const PosLexicons& lexicons)
{
    return profile(text, lexicons, LexiconTagger(lexicons));
}

ReadabilityProfile profile(std::string_view text, const PosLexicons& lexicons, const PosTagger& tagger,
                           const FleschCoefficients& coefficients)
{
    const auto s = analyze(text, lexicons, tagger);
    ReadabilityProfile p;
    p.word_count = s.words;
    p.sentence_count = s.sentences;
    p.letter_count = s.letters;
    p.syllable_count = s.syllables;
    p.avg_word_length = static_cast<double>(s.letters) / s.words;
    p.avg_sentence_length = static_cast<double>(s.words) / s.sentences;
    p.gerund_ratio = static_cast<double>(s.gerunds) / s.words;
    p.adjective_ratio = static_cast<double>(s.adjectives) / s.words;
    p.pronoun_ratio = static_cast<double>(s.pronouns) / s.words;
    p.flesch = flesch_of(s, coefficients);
    p.gulpease = gulpease_of(s);
    p.embedding_index = static_cast<double>(s.spans.embedded) / s.sentences;
    p.center_embedding_index = static_cast<double>(s.spans.center) / s.sentences;
    return p;
}

void to_json(nlohmann::json& j, const ReadabilityProfile& p)
{
    j = {{"word_count", p.word_count},
         {"sentence_count", p.sentence_count},
         {"letter_count", p.letter_count},
         {"syllable_count", p.syllable_count},
         {"avg_word_length", round_to(p.avg_word_length)},
         {"avg_sentence_length", round_to(p.avg_sentence_length)},
         {"gerund_ratio", round_to(p.gerund_ratio)},
         {"adjective_ratio", round_to(p.adjective_ratio)},
         {"pronoun_ratio", round_to(p.pronoun_ratio)},
         {"flesch", round_to(p.flesch)},
         {"gulpease", round_to(p.gulpease)},
         {"embedding_index", round_to(p.embedding_index)},
         {"center_embedding_index", round_to(p.center_embedding_index)}};
}

void from_json(const nlohmann::json& j, ReadabilityProfile& p)
{
    j.at("word_count").get_to(p.word_count);
    j.at("sentence_count").get_to(p.sentence_count);
    j.at("letter_count").get_to(p.letter_count);
    j.at("syllable_count").get_to(p.syllable_count);
    j.at("avg_word_length").get_to(p.avg_word_length);
    j.at("avg_sentence_length").get_to(p.avg_sentence_length);
    j.at("gerund_ratio").get_to(p.gerund_ratio);
    j.at("adjective_ratio").get_to(p.adjective_ratio);
    j.at("pronoun_ratio").get_to(p.pronoun_ratio);
    j.at("flesch").get_to(p.flesch);
    j.at("gulpease").get_to(p.gulpease);
    j.at("embedding_index").get_to(p.embedding_index);
    j.at("center_embedding_index").get_to(p.center_embedding_index);
}

} // namespace legis::text
