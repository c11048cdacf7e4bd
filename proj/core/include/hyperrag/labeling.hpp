#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hyperrag/corpus.hpp"
#include "hyperrag/phrase_matcher.hpp"

namespace hyperrag {

/// A named axis of the cube. Names are upper-case.
class Dimension {
 public:
  Dimension() = default;
  explicit Dimension(std::string name) : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

  friend auto operator<=>(const Dimension&, const Dimension&) = default;
  friend bool operator==(const Dimension&, const Dimension&) = default;

 private:
  std::string name_;
};

inline constexpr std::array<std::string_view, 6> kCanonicalDimensions = {
    "LOCATION", "DATE", "EVENT", "ORGANIZATION", "PERSON", "THEME"};

/// Dimension used for content-word fallback components.
inline const Dimension kThemeDimension{"THEME"};

/// The canonical six, followed by user-declared extensions in declaration
/// order.
class DimensionSet {
 public:
  DimensionSet();

  /// Validates and appends extension names. Throws InvalidArgument when a
  /// name is not upper-case or already present.
  static DimensionSet with_extensions(const std::vector<std::string>& extensions);

  /// Throws UnknownDimension for names outside the set.
  Dimension parse(std::string_view name) const;
  bool contains(std::string_view name) const;

  const std::vector<Dimension>& all() const noexcept { return dims_; }
  std::vector<std::string> extensions() const;

  friend bool operator==(const DimensionSet&, const DimensionSet&) = default;

 private:
  std::vector<Dimension> dims_;
};

/// (dimension, normalized key) pair addressing one label.
struct LabelRef {
  Dimension dimension;
  std::string key;

  friend auto operator<=>(const LabelRef&, const LabelRef&) = default;
  friend bool operator==(const LabelRef&, const LabelRef&) = default;
};

/// Labels of one document grouped by dimension, with occurrence counts.
struct DocLabels {
  std::string doc_id;
  std::map<LabelRef, std::uint32_t> counts;
  std::map<LabelRef, std::set<std::string>> surfaces;

  /// `key` must already be normalized and non-empty; `count` >= 1.
  void add(const Dimension& dim, const std::string& key, const std::string& surface, std::uint32_t count = 1);
  void merge(const DocLabels& other);

  /// Number of distinct labels, l(d).
  std::size_t size() const noexcept { return counts.size(); }
  bool empty() const noexcept { return counts.empty(); }
  std::uint32_t count(const Dimension& dim, const std::string& key) const;

  friend bool operator==(const DocLabels&, const DocLabels&) = default;
};

using LabelMap = std::map<std::string, DocLabels>;

/// Adds every label of `extra` into `into`, summing counts.
void merge_labels(LabelMap& into, const LabelMap& extra);

/// Per-dimension phrase lists matched over document tokens.
class Gazetteer {
 public:
  explicit Gazetteer(DimensionSet dims = {});

  /// Stores the phrase in normalized token form. Throws InvalidArgument for
  /// empty phrases or phrases longer than kMaxPhraseTokens tokens.
  void add(const Dimension& dim, std::string_view phrase);

  bool empty() const noexcept { return keys_.empty(); }
  std::size_t size() const noexcept { return keys_.size(); }
  const DimensionSet& dimensions() const noexcept { return dims_; }
  const std::map<Dimension, std::set<std::string>>& entries() const noexcept { return entries_; }

  /// Extracts labels from one document: per dimension, longest match wins at
  /// each token position and matches never overlap.
  DocLabels extract(const Document& doc) const;

  static constexpr std::size_t kMaxPhraseTokens = 8;

 private:
  DimensionSet dims_;
  std::map<Dimension, std::set<std::string>> entries_;
  std::map<Dimension, PhraseMatcher> matchers_;
  std::vector<std::string> keys_;  // payload -> key
};

Gazetteer load_gazetteer(const std::filesystem::path& path, const DimensionSet& dims = {});
Gazetteer parse_gazetteer(std::string_view content, const DimensionSet& dims = {});

inline DocLabels gazetteer_extract(const Document& doc, const Gazetteer& g) { return g.extract(doc); }

/// Runs the gazetteer over every document; documents without matches get an
/// empty entry.
LabelMap extract_all(const Corpus& corpus, const Gazetteer& g);

/// Ingests an offline labels file (`doc_id`, `dim`, `label`, `count`).
/// Repeated (doc, dim, label) records add up.
LabelMap load_precomputed_labels(const std::filesystem::path& path, const Corpus& corpus,
                                 const DimensionSet& dims = {});
void parse_precomputed_labels(std::string_view content, const Corpus& corpus, const DimensionSet& dims,
                              LabelMap& into);

}  // namespace hyperrag
