#include "legis/text/lexicons.hpp"

#include "legis/core/error.hpp"
#include "legis/core/resources.hpp"
#include "legis/core/strings.hpp"
#include "legis/ingest/corpus.hpp"

namespace legis::text {

std::set<std::string> parse_word_list(std::string_view content)
{
    std::set<std::string> words;
    for (const auto& line : split(content, '\n')) {
        const auto entry = trim(line);
        if (entry.empty() || entry.front() == '#')
            continue;
        words.insert(utf8_lower(entry));
    }
    return words;
}

std::set<std::string> load_word_list(const std::filesystem::path& path)
{
    return parse_word_list(ingest::read_file(path));
}

const PosLexicons& default_pos_lexicons()
{
    static const PosLexicons lex = [] {
        PosLexicons l;
        l.pronouns = parse_word_list(resource("lexicons/it/pronouns.txt"));
        l.adjective_suffixes = parse_word_list(resource("lexicons/it/adjective_suffixes.txt"));
        l.gerund_suffixes = parse_word_list(resource("lexicons/it/gerund_suffixes.txt"));
        l.gerund_exceptions = parse_word_list(resource("lexicons/it/gerund_exceptions.txt"));
        l.subordinators = parse_word_list(resource("lexicons/it/subordinators.txt"));
        return l;
    }();
    return lex;
}

const std::set<std::string>& default_abbreviations()
{
    static const auto words = parse_word_list(resource("lexicons/it/abbreviations.txt"));
    return words;
}

const std::set<std::string>& default_stopwords()
{
    static const auto words = parse_word_list(resource("lexicons/it/stopwords.txt"));
    return words;
}

PosLexicons load_pos_lexicons(const std::filesystem::path& dir)
{
    const auto required = [&](const char* name) {
        auto words = load_word_list(dir / name);
        if (words.empty())
            throw Error(ErrorCode::InvalidArgument, std::string("empty lexicon ") + name);
        return words;
    };
    PosLexicons l;
    l.pronouns = required("pronouns.txt");
    l.adjective_suffixes = required("adjective_suffixes.txt");
    l.gerund_suffixes = required("gerund_suffixes.txt");
    l.subordinators = required("subordinators.txt");
    if (std::filesystem::exists(dir / "gerund_exceptions.txt"))
        l.gerund_exceptions = load_word_list(dir / "gerund_exceptions.txt");
    return l;
}

} // namespace legis::text
