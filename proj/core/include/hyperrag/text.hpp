#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hyperrag {

/// Case-folds and NFC-normalizes `text`. Whitespace and punctuation are kept.
std::string fold_text(std::string_view text);

/// Canonical label key: folded, NFC, internal whitespace collapsed to one
/// space, outer whitespace and terminal punctuation (.,;:!?) removed.
/// Returns an empty string for input that is all punctuation/whitespace.
std::string normalize_label(std::string_view surface);

struct Token {
  std::string norm;      // folded form used for matching
  std::string_view raw;  // original bytes, outer punctuation removed
};

/// Splits on Unicode whitespace, strips leading/trailing punctuation from
/// each piece and folds it. Pieces that become empty are dropped.
std::vector<Token> tokenize(std::string_view text);

/// Convenience form of tokenize() returning only the folded tokens.
std::vector<std::string> tokenize_norm(std::string_view text);

/// Joins folded tokens of `phrase` with single spaces; the matching form of a
/// multi-word label.
std::string phrase_key(std::string_view phrase);

/// Number of whitespace-separated pieces in `text`.
std::size_t whitespace_token_count(std::string_view text);

bool is_stopword(std::string_view folded_token);

}  // namespace hyperrag
