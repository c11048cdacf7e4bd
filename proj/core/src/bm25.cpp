#include "hyperrag/bm25.hpp"

#include <algorithm>
#include <cmath>

#include "hyperrag/error.hpp"
#include "hyperrag/text.hpp"

namespace hyperrag {
namespace {
const std::vector<Bm25Index::TermPosting> kNoPostings;
}

Bm25Index Bm25Index::build(const Corpus& corpus, Bm25Params params) {
  if (corpus.empty()) throw Error(ErrorCode::kInvalidArgument, "corpus", "BM25 needs a non-empty corpus");
  if (!(params.k1 >= 0.0) || !(params.b >= 0.0 && params.b <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "bm25", "require k1 >= 0 and 0 <= b <= 1");
  }
  Bm25Index ix;
  ix.params_ = params;
  ix.doc_ids_.reserve(corpus.size());
  ix.doc_len_.reserve(corpus.size());
  std::uint64_t total = 0;
  std::unordered_map<std::string, std::uint32_t> tf;
  for (const auto& doc : corpus) {
    const auto pos = static_cast<std::uint32_t>(ix.doc_ids_.size());
    ix.doc_ids_.push_back(doc.id);
    ix.doc_pos_.emplace(doc.id, pos);
    tf.clear();
    const std::vector<std::string> tokens = tokenize_norm(doc.text);
    for (const auto& t : tokens) ++tf[t];
    // Per-doc term order is irrelevant: postings only ever grow by position.
    for (const auto& [term, n] : tf) ix.postings_[term].push_back(TermPosting{pos, n});
    ix.doc_len_.push_back(static_cast<std::uint32_t>(tokens.size()));
    total += tokens.size();
  }
  ix.avg_len_ = static_cast<double>(total) / static_cast<double>(corpus.size());
  if (ix.avg_len_ <= 0.0) throw Error(ErrorCode::kInvalidArgument, "corpus", "corpus has no tokens");
  return ix;
}

std::size_t Bm25Index::doc_len(const std::string& doc_id) const {
  auto it = doc_pos_.find(doc_id);
  if (it == doc_pos_.end()) throw Error(ErrorCode::kUnknownDocId, doc_id);
  return doc_len_[it->second];
}

const std::vector<Bm25Index::TermPosting>& Bm25Index::postings(const std::string& term) const {
  auto it = postings_.find(term);
  return it == postings_.end() ? kNoPostings : it->second;
}

std::size_t Bm25Index::df(const std::string& term) const { return postings(term).size(); }

double Bm25Index::idf(const std::string& term) const {
  const auto n = static_cast<double>(doc_ids_.size());
  const auto d = static_cast<double>(df(term));
  return std::log((n - d + 0.5) / (d + 0.5) + 1.0);
}

double Bm25Index::term_weight(double idf, std::uint32_t tf, std::size_t len) const {
  const double f = tf;
  const double norm = params_.k1 * (1.0 - params_.b + params_.b * static_cast<double>(len) / avg_len_);
  return idf * (f * (params_.k1 + 1.0)) / (f + norm);
}

double Bm25Index::score(const std::vector<std::string>& query_tokens, const std::string& doc_id) const {
  auto it = doc_pos_.find(doc_id);
  if (it == doc_pos_.end()) throw Error(ErrorCode::kUnknownDocId, doc_id);
  const std::uint32_t pos = it->second;
  double s = 0.0;
  for (const auto& term : query_tokens) {
    const auto& p = postings(term);
    auto hit = std::lower_bound(p.begin(), p.end(), pos, [](const TermPosting& tp, std::uint32_t d) { return tp.doc < d; });
    if (hit == p.end() || hit->doc != pos) continue;
    s += term_weight(idf(term), hit->tf, doc_len_[pos]);
  }
  return s;
}

std::vector<Bm25Hit> Bm25Index::retrieve_tokens(const std::vector<std::string>& query_tokens, std::size_t k) const {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k", "k must be at least 1");
  std::vector<double> acc(doc_ids_.size(), 0.0);
  std::vector<bool> touched(doc_ids_.size(), false);
  for (const auto& term : query_tokens) {
    const auto& p = postings(term);
    if (p.empty()) continue;
    const double w = idf(term);
    for (const auto& tp : p) {
      acc[tp.doc] += term_weight(w, tp.tf, doc_len_[tp.doc]);
      touched[tp.doc] = true;
    }
  }
  std::vector<std::uint32_t> hits;
  for (std::uint32_t d = 0; d < acc.size(); ++d) {
    if (touched[d]) hits.push_back(d);
  }
  auto better = [&](std::uint32_t a, std::uint32_t b) {
    if (acc[a] != acc[b]) return acc[a] > acc[b];
    return doc_ids_[a] < doc_ids_[b];
  };
  const std::size_t n = std::min(k, hits.size());
  std::partial_sort(hits.begin(), hits.begin() + static_cast<std::ptrdiff_t>(n), hits.end(), better);
  std::vector<Bm25Hit> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(Bm25Hit{doc_ids_[hits[i]], acc[hits[i]]});
  return out;
}

std::vector<Bm25Hit> Bm25Index::retrieve(std::string_view query, std::size_t k) const {
  return retrieve_tokens(tokenize_norm(query), k);
}

}  // namespace hyperrag
