#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace hyperrag {

struct Document {
  std::string id;
  std::string title;
  std::string text;
  std::size_t word_count = 0;

  friend bool operator==(const Document&, const Document&) = default;
};

/// Ordered, id-addressable document collection. Immutable once loaded.
class Corpus {
 public:
  Corpus() = default;

  /// Appends `doc`, computing its word count. Throws DuplicateId / EmptyText.
  void add(Document doc);

  std::size_t size() const noexcept { return documents_.size(); }
  bool empty() const noexcept { return documents_.empty(); }

  const std::vector<Document>& documents() const noexcept { return documents_; }
  const Document& operator[](std::size_t pos) const { return documents_[pos]; }

  std::optional<std::size_t> position(const std::string& id) const;
  bool contains(const std::string& id) const { return id_index_.contains(id); }
  const Document& at(const std::string& id) const;

  /// First `n` documents, in order.
  Corpus prefix(std::size_t n) const;

  auto begin() const noexcept { return documents_.begin(); }
  auto end() const noexcept { return documents_.end(); }

  friend bool operator==(const Corpus& a, const Corpus& b) { return a.documents_ == b.documents_; }

 private:
  std::vector<Document> documents_;
  std::unordered_map<std::string, std::size_t> id_index_;
};

struct QueryRecord {
  std::string id;
  std::string question;
  std::optional<std::string> gold_answer;
  std::vector<std::string> gold_doc_ids;

  friend bool operator==(const QueryRecord&, const QueryRecord&) = default;
};

/// Reads a line-delimited corpus (`id`, optional `title`, `text`).
/// Fails on the first bad record; never returns a partial corpus.
Corpus load_corpus(const std::filesystem::path& path);
Corpus parse_corpus(std::string_view content);

/// Reads line-delimited query records (`id`, `question`, optional
/// `gold_answer` and `gold_doc_ids`).
std::vector<QueryRecord> load_queries(const std::filesystem::path& path);
std::vector<QueryRecord> parse_queries(std::string_view content);

/// Throws MissingGold for the first query lacking gold ids or naming a
/// document the corpus does not hold.
void validate_gold(const std::vector<QueryRecord>& queries, const Corpus& corpus);

void write_corpus(const Corpus& corpus, const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace hyperrag
