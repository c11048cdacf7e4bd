#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hyperrag/corpus.hpp"

namespace hyperrag {

struct Bm25Params {
  double k1 = 1.5;
  double b = 0.75;
};

struct Bm25Hit {
  std::string doc_id;
  double score = 0.0;

  friend bool operator==(const Bm25Hit&, const Bm25Hit&) = default;
};

/// Okapi BM25 over folded whitespace tokens (no stemming, stopwords kept).
/// IDF = ln((N - df + 0.5) / (df + 0.5) + 1), which stays positive.
class Bm25Index {
 public:
  struct TermPosting {
    std::uint32_t doc;  // corpus position
    std::uint32_t tf;
  };

  /// Throws InvalidArgument for an empty corpus or parameters outside
  /// k1 >= 0, 0 <= b <= 1.
  static Bm25Index build(const Corpus& corpus, Bm25Params params = {});

  std::size_t doc_count() const noexcept { return doc_ids_.size(); }
  const Bm25Params& params() const noexcept { return params_; }
  double avg_doc_len() const noexcept { return avg_len_; }
  std::size_t doc_len(const std::string& doc_id) const;
  std::size_t df(const std::string& term) const;
  double idf(const std::string& term) const;
  const std::vector<TermPosting>& postings(const std::string& term) const;

  /// Score of one document; query tokens are taken as given (repeats count).
  /// Throws UnknownDocId.
  double score(const std::vector<std::string>& query_tokens, const std::string& doc_id) const;

  /// Top-k by score desc then doc_id asc; documents sharing no term with the
  /// query are not returned. Term-at-a-time over a dense accumulator.
  std::vector<Bm25Hit> retrieve(std::string_view query, std::size_t k) const;
  std::vector<Bm25Hit> retrieve_tokens(const std::vector<std::string>& query_tokens, std::size_t k) const;

 private:
  double term_weight(double idf, std::uint32_t tf, std::size_t len) const;

  Bm25Params params_;
  std::vector<std::string> doc_ids_;
  std::unordered_map<std::string, std::uint32_t> doc_pos_;
  std::vector<std::uint32_t> doc_len_;
  double avg_len_ = 0.0;
  std::unordered_map<std::string, std::vector<TermPosting>> postings_;
};

}  // namespace hyperrag
