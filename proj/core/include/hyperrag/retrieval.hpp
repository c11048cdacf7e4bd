#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperrag/embedding.hpp"
#include "hyperrag/hypercube.hpp"
#include "hyperrag/labeling.hpp"

namespace hyperrag {

inline constexpr double kDefaultTau = 0.9;
inline constexpr std::size_t kDefaultK = 3;

enum class ComponentSource { kVocabulary, kFallback, kExternal };

struct QueryComponent {
  Dimension dimension;
  std::string text;  // as written in the query
  std::string key;   // normalized
  ComponentSource source = ComponentSource::kVocabulary;

  friend bool operator==(const QueryComponent&, const QueryComponent&) = default;
};

/// E(q): dimension-tagged components, deduplicated by (dimension, key), in
/// order of first appearance in the query.
struct QueryDecomposition {
  std::string query_id;
  std::vector<QueryComponent> components;

  std::size_t size() const noexcept { return components.size(); }
  bool empty() const noexcept { return components.empty(); }

  friend bool operator==(const QueryDecomposition&, const QueryDecomposition&) = default;
};

/// Decompositions produced outside the engine (e.g. by an LLM), keyed by
/// query id. Each record: `{query_id, question?, components:[{dim, text}]}`.
class ExternalDecompositions {
 public:
  void add(std::string query_id, std::optional<std::string> question, std::vector<std::pair<Dimension, std::string>> components);

  const std::vector<std::pair<Dimension, std::string>>* by_id(const std::string& query_id) const;
  const std::vector<std::pair<Dimension, std::string>>* by_question(const std::string& question) const;
  /// Looks up by id first, then by exact question text.
  const std::vector<std::pair<Dimension, std::string>>* find(const std::string& query_id,
                                                             const std::string& question) const;
  std::size_t size() const noexcept { return by_id_.size(); }

 private:
  std::map<std::string, std::vector<std::pair<Dimension, std::string>>> by_id_;
  std::map<std::string, std::string> question_to_id_;
};

ExternalDecompositions load_decompositions(const std::filesystem::path& path, const DimensionSet& dims = {});
ExternalDecompositions parse_decompositions(std::string_view content, const DimensionSet& dims = {});

/// Splits `query` into components. With an external decomposition the
/// listed components are used (normalized, deduplicated). Otherwise:
/// longest match of all vocabularies over the query tokens, each hit tagged
/// with every dimension holding the phrase, then content-word fallback
/// (uncovered non-stopword unigrams and adjacent bigrams) tagged THEME.
QueryDecomposition decompose_query(std::string_view query, const HypercubeIndex& ix,
                                   const std::vector<std::pair<Dimension, std::string>>* external = nullptr,
                                   std::string query_id = {});

enum class MatchKind { kExact, kSemantic, kUnmatched };
std::string_view to_string(MatchKind kind);

/// How one component resolved against the cube vocabulary, independent of
/// any document.
struct ComponentMatch {
  QueryComponent component;
  MatchKind kind = MatchKind::kUnmatched;
  std::optional<std::string> label;
  double sim = 0.0;

  friend bool operator==(const ComponentMatch&, const ComponentMatch&) = default;
};

/// Exact match if the key is in the dimension's vocabulary; otherwise the
/// most similar label at or above `tau` (ties: smallest key); otherwise
/// unmatched. Components the encoder cannot embed stay unmatched.
ComponentMatch match_component(const QueryComponent& comp, const HypercubeIndex& ix, const Encoder& enc, double tau);

/// Per-document, per-component evidence.
struct MatchEvidence {
  Dimension dimension;
  std::string component;  // component key
  std::string component_text;
  std::optional<std::string> matched_label;
  MatchKind kind = MatchKind::kUnmatched;
  double sim = 0.0;
  std::uint32_t doc_count = 0;

  friend bool operator==(const MatchEvidence&, const MatchEvidence&) = default;
};

struct ScoredDoc {
  std::string doc_id;
  std::size_t coverage = 0;         // components matched in this doc
  std::size_t indicator_score = 0;  // components exactly matched in this doc
  std::uint64_t freq_score = 0;     // summed label counts over matched components
  std::vector<MatchEvidence> evidence;  // one entry per component, decomposition order

  friend bool operator==(const ScoredDoc&, const ScoredDoc&) = default;
};

/// Scores the union of the matched labels' posting lists; documents outside
/// that union are never touched. Output sorted by doc_id.
std::vector<ScoredDoc> score_documents(const QueryDecomposition& decomp, const std::vector<ComponentMatch>& matches,
                                       const HypercubeIndex& ix);

/// Total order used for ranking: coverage desc, freq_score desc,
/// indicator_score desc, doc_id asc.
bool ranks_before(const ScoredDoc& a, const ScoredDoc& b);

/// Documents covering all `l_q` components come first; if there are none,
/// the highest partial coverage leads. Returns the first `k`.
std::vector<ScoredDoc> rank(std::vector<ScoredDoc> scored, std::size_t l_q, std::size_t k);

struct PhaseTiming {
  std::chrono::nanoseconds decompose{0};
  std::chrono::nanoseconds match{0};
  std::chrono::nanoseconds score{0};
  std::chrono::nanoseconds rank{0};

  std::chrono::nanoseconds total() const { return decompose + match + score + rank; }
};

struct RetrievalOptions {
  double tau = kDefaultTau;
  std::size_t k = kDefaultK;
};

struct RetrievalResult {
  QueryDecomposition decomposition;
  std::vector<ComponentMatch> matches;
  std::vector<ScoredDoc> ranked;
  bool full_coverage = false;  // ranked[0] covers every component
  PhaseTiming timing;
};

RetrievalResult retrieve(std::string_view query, const HypercubeIndex& ix, const Encoder& enc,
                         const RetrievalOptions& opts = {},
                         const std::vector<std::pair<Dimension, std::string>>* external = nullptr,
                         std::string query_id = {});

}  // namespace hyperrag
