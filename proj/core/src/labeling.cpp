#include "hyperrag/labeling.hpp"

#include <algorithm>
#include <limits>

#include "hyperrag/error.hpp"
#include "hyperrag/text.hpp"
#include "jsonl.hpp"

namespace hyperrag {
namespace {

bool valid_extension_name(std::string_view name) {
  if (name.empty() || !(name.front() >= 'A' && name.front() <= 'Z')) return false;
  return std::all_of(name.begin(), name.end(),
                     [](char c) { return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_'; });
}

}  // namespace

DimensionSet::DimensionSet() {
  for (auto name : kCanonicalDimensions) dims_.emplace_back(std::string(name));
}

DimensionSet DimensionSet::with_extensions(const std::vector<std::string>& extensions) {
  DimensionSet set;
  for (const auto& name : extensions) {
    if (!valid_extension_name(name)) {
      throw Error(ErrorCode::kInvalidArgument, name, "dimension names must be upper-case [A-Z][A-Z0-9_]*");
    }
    if (set.contains(name)) {
      // Canonical names may be listed again; duplicates among extensions may not.
      if (std::find(kCanonicalDimensions.begin(), kCanonicalDimensions.end(), name) != kCanonicalDimensions.end()) {
        continue;
      }
      throw Error(ErrorCode::kInvalidArgument, name, "duplicate dimension");
    }
    set.dims_.emplace_back(name);
  }
  return set;
}

bool DimensionSet::contains(std::string_view name) const {
  return std::any_of(dims_.begin(), dims_.end(), [&](const Dimension& d) { return d.name() == name; });
}

Dimension DimensionSet::parse(std::string_view name) const {
  if (!contains(name)) throw Error(ErrorCode::kUnknownDimension, std::string(name));
  return Dimension(std::string(name));
}

std::vector<std::string> DimensionSet::extensions() const {
  std::vector<std::string> out;
  for (std::size_t i = kCanonicalDimensions.size(); i < dims_.size(); ++i) out.push_back(dims_[i].name());
  return out;
}

void DocLabels::add(const Dimension& dim, const std::string& key, const std::string& surface, std::uint32_t count) {
  LabelRef ref{dim, key};
  counts[ref] += count;
  if (!surface.empty()) surfaces[ref].insert(surface);
}

void DocLabels::merge(const DocLabels& other) {
  for (const auto& [ref, c] : other.counts) counts[ref] += c;
  for (const auto& [ref, s] : other.surfaces) surfaces[ref].insert(s.begin(), s.end());
}

std::uint32_t DocLabels::count(const Dimension& dim, const std::string& key) const {
  auto it = counts.find(LabelRef{dim, key});
  return it == counts.end() ? 0 : it->second;
}

void merge_labels(LabelMap& into, const LabelMap& extra) {
  for (const auto& [id, labels] : extra) {
    auto& slot = into[id];
    slot.doc_id = id;
    slot.merge(labels);
  }
}

Gazetteer::Gazetteer(DimensionSet dims) : dims_(std::move(dims)) {}

void Gazetteer::add(const Dimension& dim, std::string_view phrase) {
  if (!dims_.contains(dim.name())) throw Error(ErrorCode::kUnknownDimension, dim.name());
  const std::vector<std::string> tokens = tokenize_norm(phrase);
  if (tokens.empty()) {
    throw Error(ErrorCode::kInvalidArgument, std::string(phrase), "empty gazetteer phrase");
  }
  if (tokens.size() > kMaxPhraseTokens) {
    throw Error(ErrorCode::kInvalidArgument, std::string(phrase), "gazetteer phrase longer than 8 tokens");
  }
  std::string key = phrase_key(phrase);
  if (!entries_[dim].insert(key).second) return;
  const auto payload = static_cast<std::uint32_t>(keys_.size());
  keys_.push_back(std::move(key));
  matchers_[dim].insert(tokens, payload);
}

DocLabels Gazetteer::extract(const Document& doc) const {
  DocLabels out;
  out.doc_id = doc.id;
  if (empty()) return out;
  const std::vector<Token> tokens = tokenize(doc.text);
  std::vector<std::string> norms;
  norms.reserve(tokens.size());
  for (const auto& t : tokens) norms.push_back(t.norm);

  for (const auto& [dim, matcher] : matchers_) {
    matcher.scan(norms, [&](std::size_t pos, const PhraseMatcher::Match& m) {
      std::string surface;
      for (std::size_t i = pos; i < pos + m.length; ++i) {
        if (!surface.empty()) surface += ' ';
        surface.append(tokens[i].raw);
      }
      // A phrase key is unique within one dimension, so one payload.
      out.add(dim, keys_[m.payloads.front()], surface);
    });
  }
  return out;
}

Gazetteer parse_gazetteer(std::string_view content, const DimensionSet& dims) {
  Gazetteer g(dims);
  detail::for_each_record(content, [&](const nlohmann::json& rec, std::size_t line_no) {
    const std::string dim = detail::required_string(rec, "dim", line_no);
    const std::string phrase = detail::required_string(rec, "phrase", line_no);
    g.add(dims.parse(dim), phrase);
  });
  return g;
}

Gazetteer load_gazetteer(const std::filesystem::path& path, const DimensionSet& dims) {
  return parse_gazetteer(read_file(path), dims);
}

LabelMap extract_all(const Corpus& corpus, const Gazetteer& g) {
  LabelMap out;
  for (const auto& doc : corpus) out.emplace(doc.id, g.extract(doc));
  return out;
}

void parse_precomputed_labels(std::string_view content, const Corpus& corpus, const DimensionSet& dims,
                              LabelMap& into) {
  detail::for_each_record(content, [&](const nlohmann::json& rec, std::size_t line_no) {
    const std::string doc_id = detail::required_string(rec, "doc_id", line_no);
    const std::string dim_name = detail::required_string(rec, "dim", line_no);
    const std::string label = detail::required_string(rec, "label", line_no);
    auto count_it = rec.find("count");
    if (count_it == rec.end()) {
      throw Error(ErrorCode::kMissingField, std::to_string(line_no), "missing field 'count'");
    }
    if (!count_it->is_number_integer()) {
      throw Error(ErrorCode::kMalformedRecord, std::to_string(line_no), "count must be an integer");
    }
    const auto count = count_it->get<long long>();
    if (count < 1) throw Error(ErrorCode::kNonPositiveCount, std::to_string(line_no));
    if (count > std::numeric_limits<std::uint32_t>::max()) {
      throw Error(ErrorCode::kMalformedRecord, std::to_string(line_no), "count out of range");
    }
    if (!corpus.contains(doc_id)) throw Error(ErrorCode::kUnknownDocId, doc_id);
    const Dimension dim = dims.parse(dim_name);
    const std::string key = normalize_label(label);
    if (key.empty()) {
      throw Error(ErrorCode::kMalformedRecord, std::to_string(line_no), "label normalizes to empty");
    }
    auto& slot = into[doc_id];
    slot.doc_id = doc_id;
    slot.add(dim, key, label, static_cast<std::uint32_t>(count));
  });
}

LabelMap load_precomputed_labels(const std::filesystem::path& path, const Corpus& corpus, const DimensionSet& dims) {
  LabelMap out;
  parse_precomputed_labels(read_file(path), corpus, dims, out);
  return out;
}

}  // namespace hyperrag
