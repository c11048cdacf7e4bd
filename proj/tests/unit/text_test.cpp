#include <gtest/gtest.h>

#include <random>

#include "hyperrag/text.hpp"

namespace hyperrag {
namespace {

TEST(NormalizeLabel, CollapsesWhitespaceAndTerminalPunctuation) {
  EXPECT_EQ(normalize_label("Tropical  Storm Fay."), "tropical storm fay");
  EXPECT_EQ(normalize_label("rain"), "rain");
  EXPECT_EQ(normalize_label("  MELBOURNE Beach "), "melbourne beach");
}

TEST(NormalizeLabel, AllPunctuationIsEmpty) {
  EXPECT_EQ(normalize_label(" ...!? "), "");
  EXPECT_EQ(normalize_label(""), "");
}

TEST(NormalizeLabel, UnicodeFoldsToNfc) {
  // Decomposed "É" (E + combining acute) and precomposed "é" share a key.
  EXPECT_EQ(normalize_label("École"), normalize_label("école"));
  EXPECT_EQ(normalize_label("STRASSE"), "strasse");
  EXPECT_EQ(normalize_label("Straße"), "strasse");
}

TEST(NormalizeLabel, Idempotent) {
  std::mt19937_64 rng(7);
  const std::vector<std::string> alphabet{"a", "B", "c", " ", "X", ".", ",", ";", ":", "!", "?", "\t",
                                          "\u00c9", "\u00df", "-", "'", "E\u0301", "\u212b"};
  for (int i = 0; i < 500; ++i) {
    std::string s;
    const int len = static_cast<int>(rng() % 24);
    for (int j = 0; j < len; ++j) s += alphabet[rng() % alphabet.size()];
    const std::string once = normalize_label(s);
    EXPECT_EQ(normalize_label(once), once) << "input: " << s;
  }
}

TEST(Tokenize, StripsOuterPunctuationAndKeepsRaw) {
  const auto toks = tokenize("Melbourne Beach, Florida, received (25.28) inches.");
  ASSERT_EQ(toks.size(), 6u);
  EXPECT_EQ(toks[1].norm, "beach");
  EXPECT_EQ(toks[1].raw, "Beach");
  EXPECT_EQ(toks[2].norm, "florida");
  EXPECT_EQ(toks[4].norm, "25.28");
  EXPECT_EQ(toks[5].raw, "inches");
}

TEST(Tokenize, DropsPurePunctuation) {
  EXPECT_EQ(tokenize_norm("a -- b ... c"), (std::vector<std::string>{"a", "b", "c"}));
}

TEST(PhraseKey, JoinsFoldedTokens) {
  EXPECT_EQ(phrase_key("  Tropical Storm   Fay "), "tropical storm fay");
  EXPECT_EQ(phrase_key("Melbourne Beach, Fl."), "melbourne beach fl");
}

TEST(WordCount, CountsWhitespacePieces) {
  EXPECT_EQ(whitespace_token_count("  one two\tthree\n"), 3u);
  EXPECT_EQ(whitespace_token_count("   "), 0u);
}

TEST(Stopwords, QuestionWordsAreStopwords) {
  EXPECT_TRUE(is_stopword("how"));
  EXPECT_TRUE(is_stopword("much"));
  EXPECT_TRUE(is_stopword("receive"));
  EXPECT_FALSE(is_stopword("rainfall"));
}

}  // namespace
}  // namespace hyperrag
