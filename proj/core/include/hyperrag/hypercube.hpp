#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hyperrag/corpus.hpp"
#include "hyperrag/embedding.hpp"
#include "hyperrag/labeling.hpp"
#include "hyperrag/phrase_matcher.hpp"

namespace hyperrag {

struct Posting {
  std::string doc_id;
  std::uint32_t count = 0;

  friend bool operator==(const Posting&, const Posting&) = default;
};

/// Strictly sorted by doc_id.
using PostingList = std::vector<Posting>;

/// One coordinate per participating dimension.
struct CellAddress {
  std::map<Dimension, std::string> coords;
};

/// The text cube, stored as one inverted index per dimension plus forward
/// label sets per document. Cells are never materialized; a cell is the
/// intersection of its coordinates' posting lists.
///
/// Immutable after build/load apart from attaching label vectors, so
/// concurrent readers need no synchronization.
class HypercubeIndex {
 public:
  static constexpr std::uint32_t kFormatVersion = 1;

  HypercubeIndex() = default;

  /// Every document of `corpus` appears in the forward map, labeled or not.
  /// Throws UnknownDocId for labels naming documents outside the corpus and
  /// UnknownDimension for labels outside `dims`.
  static HypercubeIndex build(const Corpus& corpus, const LabelMap& labels, const DimensionSet& dims = {});

  const DimensionSet& dimension_set() const noexcept { return dims_; }
  const std::vector<Dimension>& dimensions() const noexcept { return dims_.all(); }

  std::size_t doc_count() const noexcept { return doc_ids_.size(); }
  /// Documents in corpus order.
  const std::vector<std::string>& doc_ids() const noexcept { return doc_ids_; }
  bool contains_doc(const std::string& doc_id) const { return forward_.contains(doc_id); }
  const DocLabels& forward(const std::string& doc_id) const;

  /// Posting list of one label; empty when the key is unseen. O(1) in the
  /// corpus size: a hash probe returning a reference.
  const PostingList& lookup(const Dimension& dim, const std::string& key) const;

  /// Sorted label keys of one dimension (L_i).
  const std::vector<std::string>& vocab(const Dimension& dim) const;
  std::optional<std::size_t> vocab_position(const Dimension& dim, const std::string& key) const;
  bool has_label(const Dimension& dim, const std::string& key) const {
    return vocab_position(dim, key).has_value();
  }
  std::size_t label_count() const noexcept;

  /// Sorted documents occupying the cell: multi-way intersection of the
  /// coordinates' posting lists, shortest list first.
  std::vector<std::string> cell_documents(const CellAddress& addr) const;

  /// Trie over the tokenized keys of every dimension; payloads index
  /// vocab_entry().
  const PhraseMatcher& vocab_matcher() const noexcept { return vocab_matcher_; }
  const LabelRef& vocab_entry(std::uint32_t payload) const { return vocab_entries_.at(payload); }

  const std::optional<LabelVectors>& label_vectors() const noexcept { return vectors_; }
  /// Throws DimMismatch when row counts disagree with the vocabulary.
  void set_label_vectors(LabelVectors vectors);
  void embed(const Encoder& enc) { set_label_vectors(embed_vocabulary(*this, enc)); }

  /// Full forward <-> inverted cross-walk. On failure writes the first
  /// violation to `why` when given.
  bool verify_symmetry(std::string* why = nullptr) const;

  std::string serialize() const;
  static HypercubeIndex deserialize(std::string_view bytes);
  void save(const std::filesystem::path& path) const;
  static HypercubeIndex load(const std::filesystem::path& path);

  friend bool operator==(const HypercubeIndex& a, const HypercubeIndex& b);

 private:
  struct Entry {
    PostingList postings;
    std::size_t vocab_pos = 0;
  };
  struct DimensionTable {
    std::unordered_map<std::string, Entry> entries;
    std::vector<std::string> vocab;
  };

  const DimensionTable* table(const Dimension& dim) const;
  void finalize();

  DimensionSet dims_;
  std::vector<std::string> doc_ids_;
  std::unordered_map<std::string, DocLabels> forward_;
  std::map<Dimension, DimensionTable> tables_;
  std::optional<LabelVectors> vectors_;

  PhraseMatcher vocab_matcher_;
  std::vector<LabelRef> vocab_entries_;
};

inline HypercubeIndex build_index(const Corpus& corpus, const LabelMap& labels, const DimensionSet& dims = {}) {
  return HypercubeIndex::build(corpus, labels, dims);
}

inline void save_index(const HypercubeIndex& ix, const std::filesystem::path& path) { ix.save(path); }
inline HypercubeIndex load_index(const std::filesystem::path& path) { return HypercubeIndex::load(path); }

}  // namespace hyperrag
