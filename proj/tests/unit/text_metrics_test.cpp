#include "legis/core/error.hpp"
#include "legis/text/lexicons.hpp"
#include "legis/text/metrics.hpp"

#include "support/expect_error.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace legis;
using namespace legis::text;

using legis::testing::expect_error;

TEST(SplitSentences, BasicAndAbbreviations)
{
    EXPECT_EQ(split_sentences("A. B."), (std::vector<std::string>{"A.", "B."}));
    EXPECT_EQ(split_sentences("Ai sensi dell'art. 3 si applica.").size(), 1u);
    EXPECT_TRUE(split_sentences("").empty());
    EXPECT_EQ(split_sentences("Prima frase; seconda frase! Terza?").size(), 3u);
}

TEST(Words, CliticsSplitAndLowercase)
{
    EXPECT_EQ(words("Dell'Arte è bella"), (std::vector<std::string>{"dell", "arte", "è", "bella"}));
    EXPECT_TRUE(words("123 , ;").empty());
}

TEST(Syllables, VowelGroups)
{
    EXPECT_EQ(count_syllables_it("gatto"), 2);
    EXPECT_EQ(count_syllables_it("aiuola"), 2);
    EXPECT_EQ(count_syllables_it("Il"), 1);
    EXPECT_EQ(count_syllables_it("città"), 2);
    expect_error(ErrorCode::NoLetters, [] { (void)count_syllables_it("42"); });
}

TEST(Gulpease, HandComputedFixtures)
{
    // W=3 L=12 S=1: 89 + (300 - 120) / 3 = 149, clamped.
    EXPECT_DOUBLE_EQ(gulpease("Il gatto dorme."), 100.0);
    // W=10 L=51 S=1: 89 + (300 - 510) / 10 = 68.
    EXPECT_DOUBLE_EQ(gulpease("La legge stabilisce nuove regole per la tutela dei cittadini."), 68.0);
    expect_error(ErrorCode::EmptyText, [] { (void)gulpease(""); });
}

TEST(Flesch, HandComputedFixture)
{
    // W=3 S=1 Y=5: 206.835 - 1.015*3 - 84.6*5/3.
    EXPECT_NEAR(flesch("Il gatto dorme."), 62.79, 0.01);
    EXPECT_DOUBLE_EQ(flesch("Il gatto dorme.", {0, 0, 0}), 0.0);
    expect_error(ErrorCode::EmptyText, [] { (void)flesch("   "); });
}

TEST(PosRatios, LexiconRules)
{
    const auto& lex = default_pos_lexicons();
    EXPECT_DOUBLE_EQ(pos_ratios("procedendo", lex).gerund_ratio, 1.0);
    const auto none = pos_ratios("il gatto", lex);
    EXPECT_DOUBLE_EQ(none.gerund_ratio, 0.0);
    EXPECT_DOUBLE_EQ(none.pronoun_ratio, 0.0);
    ASSERT_TRUE(lex.pronouns.contains("egli"));
    EXPECT_DOUBLE_EQ(pos_ratios("egli procede", lex).pronoun_ratio, 0.5);
    EXPECT_DOUBLE_EQ(pos_ratios("quando", lex).gerund_ratio, 0.0);
}

TEST(EmbeddingIndices, CommaSpans)
{
    const auto& lex = default_pos_lexicons();
    const auto center = embedding_indices("Il decreto, che disciplina i contratti, entra in vigore.", lex);
    EXPECT_DOUBLE_EQ(center.embedding_index, 1.0);
    EXPECT_DOUBLE_EQ(center.center_embedding_index, 1.0);
    const auto flat = embedding_indices("Il decreto entra in vigore.", lex);
    EXPECT_DOUBLE_EQ(flat.embedding_index, 0.0);
    EXPECT_DOUBLE_EQ(flat.center_embedding_index, 0.0);
    const auto tail = embedding_indices("Si applica la norma, che deroga.", lex);
    EXPECT_DOUBLE_EQ(tail.embedding_index, 1.0);
    EXPECT_DOUBLE_EQ(tail.center_embedding_index, 0.0);
}

TEST(Profile, Composition)
{
    const auto p = profile("Il gatto dorme.");
    EXPECT_DOUBLE_EQ(p.gulpease, 100.0);
    EXPECT_NEAR(p.flesch, 62.79, 0.01);
    EXPECT_DOUBLE_EQ(p.avg_sentence_length, 3.0);
    EXPECT_EQ(p.word_count, 3);
    EXPECT_EQ(p.letter_count, 12);
    EXPECT_EQ(p.syllable_count, 5);
    expect_error(ErrorCode::EmptyText, [] { (void)profile(" \n\t "); });
}

TEST(Profile, Deterministic)
{
    const std::string t = "Il Ministro, sentito il Consiglio, adotta il regolamento procedendo alla pubblicazione.";
    EXPECT_EQ(profile(t), profile(t));
}

TEST(Profile, SelfConcatenationKeepsRatios)
{
    const std::string t = "La norma, che disciplina la materia, si applica. Egli procede adottando nuove misure. ";
    const auto a = profile(t);
    const auto b = profile(t + t);
    EXPECT_EQ(b.word_count, 2 * a.word_count);
    EXPECT_EQ(b.sentence_count, 2 * a.sentence_count);
    EXPECT_NEAR(a.gulpease, b.gulpease, 1e-9);
    EXPECT_NEAR(a.flesch, b.flesch, 1e-9);
    EXPECT_NEAR(a.gerund_ratio, b.gerund_ratio, 1e-9);
    EXPECT_NEAR(a.center_embedding_index, b.center_embedding_index, 1e-9);
}

TEST(Lexicons, ParseWordList)
{
    const auto s = parse_word_list("# comment\nEgli\n\n  ella \nEGLI\n");
    EXPECT_EQ(s, (std::set<std::string>{"egli", "ella"}));
}

TEST(Profile, JsonRoundTripRounds)
{
    const auto p = profile("La legge stabilisce nuove regole per la tutela dei cittadini.");
    nlohmann::json j = p;
    const auto back = j.get<ReadabilityProfile>();
    EXPECT_EQ(back.word_count, p.word_count);
    EXPECT_DOUBLE_EQ(back.gulpease, 68.0);
}
