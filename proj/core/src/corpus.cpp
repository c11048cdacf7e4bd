#include "hyperrag/corpus.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "hyperrag/error.hpp"
#include "hyperrag/text.hpp"
#include "jsonl.hpp"

namespace hyperrag {

void Corpus::add(Document doc) {
  if (doc.id.empty()) {
    throw Error(ErrorCode::kMissingField, "id", "empty document id");
  }
  if (id_index_.contains(doc.id)) {
    throw Error(ErrorCode::kDuplicateId, doc.id);
  }
  doc.word_count = whitespace_token_count(doc.text);
  if (doc.word_count == 0) {
    throw Error(ErrorCode::kEmptyText, doc.id);
  }
  id_index_.emplace(doc.id, documents_.size());
  documents_.push_back(std::move(doc));
}

std::optional<std::size_t> Corpus::position(const std::string& id) const {
  if (auto it = id_index_.find(id); it != id_index_.end()) return it->second;
  return std::nullopt;
}

const Document& Corpus::at(const std::string& id) const {
  auto pos = position(id);
  if (!pos) throw Error(ErrorCode::kUnknownDocId, id);
  return documents_[*pos];
}

Corpus Corpus::prefix(std::size_t n) const {
  Corpus out;
  for (std::size_t i = 0; i < std::min(n, documents_.size()); ++i) out.add(documents_[i]);
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoFailure, path.string(), "cannot open for reading");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) {
    throw Error(ErrorCode::kIoFailure, path.string(), "read failed");
  }
  return std::move(buf).str();
}

Corpus parse_corpus(std::string_view content) {
  Corpus corpus;
  detail::for_each_record(content, [&](const nlohmann::json& rec, std::size_t line_no) {
    Document doc;
    doc.id = detail::required_string(rec, "id", line_no);
    doc.title = detail::optional_string(rec, "title", line_no).value_or("");
    doc.text = detail::required_string(rec, "text", line_no);
    corpus.add(std::move(doc));
  });
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) { return parse_corpus(read_file(path)); }

std::vector<QueryRecord> parse_queries(std::string_view content) {
  std::vector<QueryRecord> out;
  std::unordered_set<std::string> seen;
  detail::for_each_record(content, [&](const nlohmann::json& rec, std::size_t line_no) {
    QueryRecord q;
    q.id = detail::required_string(rec, "id", line_no);
    q.question = detail::required_string(rec, "question", line_no);
    if (q.id.empty() || q.question.empty()) {
      throw Error(ErrorCode::kMissingField, std::to_string(line_no), "empty id or question");
    }
    q.gold_answer = detail::optional_string(rec, "gold_answer", line_no);
    if (auto it = rec.find("gold_doc_ids"); it != rec.end() && !it->is_null()) {
      if (!it->is_array()) {
        throw Error(ErrorCode::kMalformedRecord, std::to_string(line_no), "gold_doc_ids must be an array");
      }
      for (const auto& g : *it) {
        if (!g.is_string()) {
          throw Error(ErrorCode::kMalformedRecord, std::to_string(line_no), "gold_doc_ids entries must be strings");
        }
        q.gold_doc_ids.push_back(g.get<std::string>());
      }
    }
    if (!seen.insert(q.id).second) {
      throw Error(ErrorCode::kDuplicateId, q.id);
    }
    out.push_back(std::move(q));
  });
  return out;
}

std::vector<QueryRecord> load_queries(const std::filesystem::path& path) {
  return parse_queries(read_file(path));
}

void validate_gold(const std::vector<QueryRecord>& queries, const Corpus& corpus) {
  for (const auto& q : queries) {
    if (q.gold_doc_ids.empty()) {
      throw Error(ErrorCode::kMissingGold, q.id, "no gold_doc_ids");
    }
    for (const auto& g : q.gold_doc_ids) {
      if (!corpus.contains(g)) {
        throw Error(ErrorCode::kMissingGold, q.id, "gold document '" + g + "' not in corpus");
      }
    }
  }
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, path.string(), "cannot open for writing");
  for (const auto& d : corpus) {
    nlohmann::ordered_json rec;
    rec["id"] = d.id;
    if (!d.title.empty()) rec["title"] = d.title;
    rec["text"] = d.text;
    out << rec.dump() << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoFailure, path.string(), "write failed");
}

}  // namespace hyperrag
