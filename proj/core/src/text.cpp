#include "hyperrag/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>

namespace hyperrag {
namespace {

bool is_ascii(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

bool is_space_cp(UChar32 c) {
  if (c < 0x80) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
  }
  return u_isUWhiteSpace(c) != 0;
}

bool is_punct_cp(UChar32 c) { return u_ispunct(c) != 0; }

bool is_terminal_punct(char c) {
  return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?';
}

std::string icu_fold(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) {
    throw std::runtime_error("ICU NFC normalizer unavailable");
  }
  icu::UnicodeString current = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  // Folding an NFC string can leave it non-NFC; iterate to a fixed point.
  for (int round = 0; round < 4; ++round) {
    icu::UnicodeString next = nfc->normalize(current, status);
    next.foldCase(U_FOLD_CASE_DEFAULT);
    next = nfc->normalize(next, status);
    if (U_FAILURE(status)) {
      throw std::runtime_error("ICU normalization failed");
    }
    if (next == current) {
      break;
    }
    current = std::move(next);
  }
  std::string out;
  current.toUTF8String(out);
  return out;
}

// Visits each code point of `s` with its byte range.
template <typename Fn>
void for_each_cp(std::string_view s, Fn&& fn) {
  const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
  const auto length = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < length) {
    const int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    fn(c, static_cast<std::size_t>(start), static_cast<std::size_t>(i));
  }
}

// Byte ranges of whitespace-separated pieces.
std::vector<std::pair<std::size_t, std::size_t>> split_ws(std::string_view s) {
  std::vector<std::pair<std::size_t, std::size_t>> pieces;
  std::size_t begin = 0;
  bool in_piece = false;
  for_each_cp(s, [&](UChar32 c, std::size_t start, std::size_t) {
    if (is_space_cp(c)) {
      if (in_piece) {
        pieces.emplace_back(begin, start);
        in_piece = false;
      }
    } else if (!in_piece) {
      begin = start;
      in_piece = true;
    }
  });
  if (in_piece) {
    pieces.emplace_back(begin, s.size());
  }
  return pieces;
}

std::string_view strip_outer_punct(std::string_view piece) {
  struct Cp {
    UChar32 c;
    std::size_t start, end;
  };
  std::vector<Cp> cps;
  for_each_cp(piece, [&](UChar32 c, std::size_t s, std::size_t e) { cps.push_back({c, s, e}); });
  std::size_t lo = 0;
  std::size_t hi = cps.size();
  while (lo < hi && is_punct_cp(cps[lo].c)) ++lo;
  while (hi > lo && is_punct_cp(cps[hi - 1].c)) --hi;
  if (lo == hi) {
    return {};
  }
  return piece.substr(cps[lo].start, cps[hi - 1].end - cps[lo].start);
}

constexpr std::array<std::string_view, 155> kStopwords = {
    "a",       "about",   "above",   "after",   "again",   "against", "all",     "also",
    "am",      "an",      "and",     "any",     "are",     "as",      "at",      "be",
    "because", "been",    "before",  "being",   "below",   "between", "both",    "but",
    "by",      "can",     "could",   "did",     "do",      "does",    "doing",   "down",
    "during",  "each",    "few",     "for",     "from",    "further", "had",     "has",
    "have",    "having",  "he",      "her",     "here",    "hers",    "herself", "him",
    "himself", "his",     "how",     "i",       "if",      "in",      "into",    "is",
    "it",      "its",     "itself",  "just",    "many",    "may",     "me",      "might",
    "more",    "most",    "much",    "must",    "my",      "myself",  "no",      "nor",
    "not",     "now",     "of",      "off",     "on",      "once",    "only",    "or",
    "other",   "our",     "ours",    "out",     "over",    "own",     "same",    "shall",
    "she",     "should",  "so",      "some",    "such",    "than",    "that",    "the",
    "their",   "theirs",  "them",    "then",    "there",   "these",   "they",    "this",
    "those",   "through", "to",      "too",     "under",   "until",   "up",      "upon",
    "very",    "was",     "we",      "were",    "what",    "when",    "where",   "whether",
    "which",   "while",   "who",     "whom",    "whose",   "why",     "will",    "with",
    "within",  "without", "would",   "you",     "your",    "yours",   "according", "tell",
    "describe", "explain", "give",   "happened", "list",   "please",  "regarding", "several",
    "receive", "received", "receives",
};

}  // namespace

std::string fold_text(std::string_view text) {
  if (is_ascii(text)) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](char c) {
      return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    });
    return out;
  }
  return icu_fold(text);
}

std::string normalize_label(std::string_view surface) {
  const std::string folded = fold_text(surface);
  std::string out;
  out.reserve(folded.size());
  for (const auto& [b, e] : split_ws(folded)) {
    if (!out.empty()) out += ' ';
    out.append(folded, b, e - b);
  }
  while (!out.empty() && (is_terminal_punct(out.back()) || out.back() == ' ')) {
    out.pop_back();
  }
  return out;
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  for (const auto& [b, e] : split_ws(text)) {
    const std::string_view raw = strip_outer_punct(text.substr(b, e - b));
    if (raw.empty()) continue;
    tokens.push_back(Token{fold_text(raw), raw});
  }
  return tokens;
}

std::vector<std::string> tokenize_norm(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : tokenize(text)) out.push_back(std::move(t.norm));
  return out;
}

std::string phrase_key(std::string_view phrase) {
  std::string out;
  for (const auto& t : tokenize(phrase)) {
    if (!out.empty()) out += ' ';
    out += t.norm;
  }
  return out;
}

std::size_t whitespace_token_count(std::string_view text) { return split_ws(text).size(); }

bool is_stopword(std::string_view folded_token) {
  return std::find(kStopwords.begin(), kStopwords.end(), folded_token) != kStopwords.end();
}

}  // namespace hyperrag
