#include "hyperrag/hypercube.hpp"

#include <algorithm>
#include <sstream>

#include "hyperrag/error.hpp"
#include "hyperrag/text.hpp"

namespace hyperrag {
namespace {

const PostingList kEmptyPostings;
const std::vector<std::string> kEmptyVocab;

bool by_doc_id(const Posting& a, const Posting& b) { return a.doc_id < b.doc_id; }

std::vector<std::string> intersect_sorted(const std::vector<std::string>& a, const PostingList& b) {
  std::vector<std::string> out;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < ib->doc_id) {
      ++ia;
    } else if (ib->doc_id < *ia) {
      ++ib;
    } else {
      out.push_back(*ia);
      ++ia;
      ++ib;
    }
  }
  return out;
}

}  // namespace

HypercubeIndex HypercubeIndex::build(const Corpus& corpus, const LabelMap& labels, const DimensionSet& dims) {
  HypercubeIndex ix;
  ix.dims_ = dims;
  for (const auto& dim : dims.all()) ix.tables_[dim];

  for (const auto& [doc_id, doc_labels] : labels) {
    if (!corpus.contains(doc_id)) throw Error(ErrorCode::kUnknownDocId, doc_id);
    for (const auto& [ref, count] : doc_labels.counts) {
      if (!dims.contains(ref.dimension.name())) throw Error(ErrorCode::kUnknownDimension, ref.dimension.name());
      if (ref.key.empty()) throw Error(ErrorCode::kInvalidArgument, doc_id, "empty label key");
      if (count < 1) throw Error(ErrorCode::kNonPositiveCount, doc_id);
    }
  }

  ix.doc_ids_.reserve(corpus.size());
  ix.forward_.reserve(corpus.size());
  for (const auto& doc : corpus) {
    ix.doc_ids_.push_back(doc.id);
    DocLabels fwd;
    if (auto it = labels.find(doc.id); it != labels.end()) fwd = it->second;
    fwd.doc_id = doc.id;
    for (const auto& [ref, count] : fwd.counts) {
      ix.tables_[ref.dimension].entries[ref.key].postings.push_back(Posting{doc.id, count});
    }
    ix.forward_.emplace(doc.id, std::move(fwd));
  }
  ix.finalize();
  return ix;
}

void HypercubeIndex::finalize() {
  vocab_matcher_ = PhraseMatcher{};
  vocab_entries_.clear();
  for (const auto& dim : dims_.all()) {
    auto& t = tables_[dim];
    t.vocab.clear();
    t.vocab.reserve(t.entries.size());
    for (auto& [key, entry] : t.entries) {
      std::sort(entry.postings.begin(), entry.postings.end(), by_doc_id);
      t.vocab.push_back(key);
    }
    std::sort(t.vocab.begin(), t.vocab.end());
    for (std::size_t i = 0; i < t.vocab.size(); ++i) {
      t.entries[t.vocab[i]].vocab_pos = i;
      const std::vector<std::string> tokens = tokenize_norm(t.vocab[i]);
      if (tokens.empty()) continue;
      vocab_matcher_.insert(tokens, static_cast<std::uint32_t>(vocab_entries_.size()));
      vocab_entries_.push_back(LabelRef{dim, t.vocab[i]});
    }
  }
}

const HypercubeIndex::DimensionTable* HypercubeIndex::table(const Dimension& dim) const {
  auto it = tables_.find(dim);
  return it == tables_.end() ? nullptr : &it->second;
}

const DocLabels& HypercubeIndex::forward(const std::string& doc_id) const {
  auto it = forward_.find(doc_id);
  if (it == forward_.end()) throw Error(ErrorCode::kUnknownDocId, doc_id);
  return it->second;
}

const PostingList& HypercubeIndex::lookup(const Dimension& dim, const std::string& key) const {
  const DimensionTable* t = table(dim);
  if (t == nullptr) return kEmptyPostings;
  auto it = t->entries.find(key);
  return it == t->entries.end() ? kEmptyPostings : it->second.postings;
}

const std::vector<std::string>& HypercubeIndex::vocab(const Dimension& dim) const {
  const DimensionTable* t = table(dim);
  return t == nullptr ? kEmptyVocab : t->vocab;
}

std::optional<std::size_t> HypercubeIndex::vocab_position(const Dimension& dim, const std::string& key) const {
  const DimensionTable* t = table(dim);
  if (t == nullptr) return std::nullopt;
  auto it = t->entries.find(key);
  if (it == t->entries.end()) return std::nullopt;
  return it->second.vocab_pos;
}

std::size_t HypercubeIndex::label_count() const noexcept {
  std::size_t n = 0;
  for (const auto& [dim, t] : tables_) n += t.vocab.size();
  return n;
}

std::vector<std::string> HypercubeIndex::cell_documents(const CellAddress& addr) const {
  if (addr.coords.empty()) throw Error(ErrorCode::kInvalidArgument, "cell", "empty cell address");
  std::vector<const PostingList*> lists;
  lists.reserve(addr.coords.size());
  for (const auto& [dim, key] : addr.coords) {
    const PostingList& p = lookup(dim, key);
    if (p.empty()) return {};
    lists.push_back(&p);
  }
  std::sort(lists.begin(), lists.end(), [](const PostingList* a, const PostingList* b) { return a->size() < b->size(); });
  std::vector<std::string> acc;
  acc.reserve(lists.front()->size());
  for (const auto& p : *lists.front()) acc.push_back(p.doc_id);
  for (std::size_t i = 1; i < lists.size() && !acc.empty(); ++i) acc = intersect_sorted(acc, *lists[i]);
  return acc;
}

void HypercubeIndex::set_label_vectors(LabelVectors vectors) {
  for (const auto& dim : dims_.all()) {
    const std::size_t expected = vocab(dim).size() * vectors.dim;
    auto it = vectors.rows.find(dim);
    const std::size_t got = it == vectors.rows.end() ? 0 : it->second.size();
    if (got != expected) {
      throw Error(ErrorCode::kDimMismatch, dim.name(), "label vector table does not match vocabulary");
    }
  }
  vectors_ = std::move(vectors);
}

bool HypercubeIndex::verify_symmetry(std::string* why) const {
  auto fail = [&](const std::string& msg) {
    if (why != nullptr) *why = msg;
    return false;
  };
  if (doc_ids_.size() != forward_.size()) return fail("doc id list and forward map differ in size");
  for (const auto& id : doc_ids_) {
    if (!forward_.contains(id)) return fail("doc " + id + " missing from forward map");
  }
  std::size_t inverted_pairs = 0;
  for (const auto& [dim, t] : tables_) {
    if (t.vocab.size() != t.entries.size()) return fail("vocab size mismatch in " + dim.name());
    for (std::size_t i = 0; i < t.vocab.size(); ++i) {
      auto it = t.entries.find(t.vocab[i]);
      if (it == t.entries.end()) return fail("vocab key without postings: " + t.vocab[i]);
      if (it->second.vocab_pos != i) return fail("vocab position mismatch: " + t.vocab[i]);
      if (i > 0 && !(t.vocab[i - 1] < t.vocab[i])) return fail("vocab not strictly sorted in " + dim.name());
      const PostingList& postings = it->second.postings;
      if (postings.empty()) return fail("empty posting list: " + t.vocab[i]);
      for (std::size_t j = 0; j < postings.size(); ++j) {
        const Posting& p = postings[j];
        if (j > 0 && !(postings[j - 1].doc_id < p.doc_id)) return fail("posting list not strictly sorted: " + t.vocab[i]);
        auto f = forward_.find(p.doc_id);
        if (f == forward_.end()) return fail("posting names unknown doc " + p.doc_id);
        if (f->second.count(dim, t.vocab[i]) != p.count) {
          return fail("count mismatch for " + dim.name() + "/" + t.vocab[i] + " in doc " + p.doc_id);
        }
        ++inverted_pairs;
      }
    }
  }
  std::size_t forward_pairs = 0;
  for (const auto& [id, labels] : forward_) {
    for (const auto& [ref, count] : labels.counts) {
      const PostingList& p = lookup(ref.dimension, ref.key);
      auto it = std::lower_bound(p.begin(), p.end(), Posting{id, 0}, by_doc_id);
      if (it == p.end() || it->doc_id != id || it->count != count) {
        return fail("forward label " + ref.dimension.name() + "/" + ref.key + " of doc " + id + " not in inverted index");
      }
      ++forward_pairs;
    }
  }
  if (forward_pairs != inverted_pairs) return fail("forward and inverted pair counts differ");
  return true;
}

bool operator==(const HypercubeIndex& a, const HypercubeIndex& b) {
  if (!(a.dims_ == b.dims_) || a.doc_ids_ != b.doc_ids_ || a.forward_ != b.forward_ || a.vectors_ != b.vectors_) {
    return false;
  }
  if (a.tables_.size() != b.tables_.size()) return false;
  for (const auto& [dim, ta] : a.tables_) {
    auto it = b.tables_.find(dim);
    if (it == b.tables_.end()) return false;
    const auto& tb = it->second;
    if (ta.vocab != tb.vocab) return false;
    for (const auto& key : ta.vocab) {
      if (ta.entries.at(key).postings != tb.entries.at(key).postings) return false;
    }
  }
  return true;
}

}  // namespace hyperrag
