#include "hyperrag/retrieval.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "hyperrag/error.hpp"
#include "hyperrag/text.hpp"
#include "jsonl.hpp"

namespace hyperrag {
namespace {

using Clock = std::chrono::steady_clock;

std::size_t code_points(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

bool has_letter(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) {
    const auto u = static_cast<unsigned char>(c);
    return (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z') || u >= 0x80;
  });
}

bool fallback_eligible(const Token& t) {
  return !is_stopword(t.norm) && code_points(t.norm) >= 3 && has_letter(t.norm);
}

std::string join_raw(const std::vector<Token>& tokens, std::size_t from, std::size_t to) {
  std::string out;
  for (std::size_t i = from; i < to; ++i) {
    if (!out.empty()) out += ' ';
    out.append(tokens[i].raw);
  }
  return out;
}

struct Positioned {
  std::size_t pos;
  std::size_t seq;
  QueryComponent comp;
};

void dedup_into(QueryDecomposition& out, std::vector<QueryComponent> comps) {
  std::set<std::pair<Dimension, std::string>> seen;
  for (auto& c : comps) {
    if (c.key.empty()) continue;
    if (!seen.emplace(c.dimension, c.key).second) continue;
    out.components.push_back(std::move(c));
  }
}

}  // namespace

std::string_view to_string(MatchKind kind) {
  switch (kind) {
    case MatchKind::kExact: return "exact";
    case MatchKind::kSemantic: return "semantic";
    case MatchKind::kUnmatched: return "unmatched";
  }
  return "unmatched";
}

void ExternalDecompositions::add(std::string query_id, std::optional<std::string> question,
                                 std::vector<std::pair<Dimension, std::string>> components) {
  if (by_id_.contains(query_id)) throw Error(ErrorCode::kDuplicateId, query_id);
  if (question) question_to_id_.emplace(*question, query_id);
  by_id_.emplace(std::move(query_id), std::move(components));
}

const std::vector<std::pair<Dimension, std::string>>* ExternalDecompositions::by_id(const std::string& query_id) const {
  auto it = by_id_.find(query_id);
  return it == by_id_.end() ? nullptr : &it->second;
}

const std::vector<std::pair<Dimension, std::string>>* ExternalDecompositions::by_question(
    const std::string& question) const {
  auto it = question_to_id_.find(question);
  return it == question_to_id_.end() ? nullptr : by_id(it->second);
}

const std::vector<std::pair<Dimension, std::string>>* ExternalDecompositions::find(const std::string& query_id,
                                                                                   const std::string& question) const {
  if (!query_id.empty()) {
    if (const auto* hit = by_id(query_id)) return hit;
  }
  return by_question(question);
}

ExternalDecompositions parse_decompositions(std::string_view content, const DimensionSet& dims) {
  ExternalDecompositions out;
  detail::for_each_record(content, [&](const nlohmann::json& rec, std::size_t line_no) {
    std::string id = detail::required_string(rec, "query_id", line_no);
    auto question = detail::optional_string(rec, "question", line_no);
    auto comps = rec.find("components");
    if (comps == rec.end() || !comps->is_array()) {
      throw Error(ErrorCode::kMissingField, std::to_string(line_no), "missing array field 'components'");
    }
    std::vector<std::pair<Dimension, std::string>> parsed;
    for (const auto& c : *comps) {
      if (!c.is_object()) throw Error(ErrorCode::kMalformedRecord, std::to_string(line_no), "component must be an object");
      parsed.emplace_back(dims.parse(detail::required_string(c, "dim", line_no)),
                          detail::required_string(c, "text", line_no));
    }
    out.add(std::move(id), std::move(question), std::move(parsed));
  });
  return out;
}

ExternalDecompositions load_decompositions(const std::filesystem::path& path, const DimensionSet& dims) {
  return parse_decompositions(read_file(path), dims);
}

QueryDecomposition decompose_query(std::string_view query, const HypercubeIndex& ix,
                                   const std::vector<std::pair<Dimension, std::string>>* external,
                                   std::string query_id) {
  QueryDecomposition out;
  out.query_id = std::move(query_id);

  if (external != nullptr) {
    std::vector<QueryComponent> comps;
    for (const auto& [dim, text] : *external) {
      comps.push_back(QueryComponent{dim, text, normalize_label(text), ComponentSource::kExternal});
    }
    dedup_into(out, std::move(comps));
    return out;
  }

  const std::vector<Token> tokens = tokenize(query);
  std::vector<std::string> norms;
  norms.reserve(tokens.size());
  for (const auto& t : tokens) norms.push_back(t.norm);

  std::vector<Positioned> found;
  std::vector<bool> covered(tokens.size(), false);
  std::size_t seq = 0;
  ix.vocab_matcher().scan(norms, [&](std::size_t pos, const PhraseMatcher::Match& m) {
    const std::string text = join_raw(tokens, pos, pos + m.length);
    for (std::uint32_t payload : m.payloads) {
      const LabelRef& ref = ix.vocab_entry(payload);
      found.push_back(Positioned{pos, seq++, QueryComponent{ref.dimension, text, ref.key, ComponentSource::kVocabulary}});
    }
    std::fill(covered.begin() + static_cast<std::ptrdiff_t>(pos),
              covered.begin() + static_cast<std::ptrdiff_t>(pos + m.length), true);
  });

  auto eligible = [&](std::size_t i) { return !covered[i] && fallback_eligible(tokens[i]); };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (!eligible(i)) continue;
    const std::string uni = join_raw(tokens, i, i + 1);
    found.push_back(Positioned{i, seq++, QueryComponent{kThemeDimension, uni, normalize_label(uni), ComponentSource::kFallback}});
    if (i + 1 < tokens.size() && eligible(i + 1)) {
      const std::string bi = join_raw(tokens, i, i + 2);
      found.push_back(Positioned{i, seq++, QueryComponent{kThemeDimension, bi, normalize_label(bi), ComponentSource::kFallback}});
    }
  }

  std::sort(found.begin(), found.end(), [](const Positioned& a, const Positioned& b) {
    if (a.pos != b.pos) return a.pos < b.pos;
    if (a.comp.key != b.comp.key) return a.comp.key < b.comp.key;
    return a.seq < b.seq;
  });
  std::vector<QueryComponent> comps;
  comps.reserve(found.size());
  for (auto& f : found) comps.push_back(std::move(f.comp));
  dedup_into(out, std::move(comps));
  return out;
}

ComponentMatch match_component(const QueryComponent& comp, const HypercubeIndex& ix, const Encoder& enc, double tau) {
  check_tau(tau);
  ComponentMatch m;
  m.component = comp;
  if (ix.has_label(comp.dimension, comp.key)) {
    m.kind = MatchKind::kExact;
    m.label = comp.key;
    m.sim = 1.0;
    return m;
  }
  if (ix.vocab(comp.dimension).empty()) return m;
  std::vector<Neighbor> neighbors;
  try {
    neighbors = semantic_neighbors(comp.key, comp.dimension, ix, enc, tau);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kUnencodableText) throw;
    return m;
  }
  if (!neighbors.empty()) {
    m.kind = MatchKind::kSemantic;
    m.label = neighbors.front().key;
    m.sim = neighbors.front().sim;
  }
  return m;
}

std::vector<ScoredDoc> score_documents(const QueryDecomposition& decomp, const std::vector<ComponentMatch>& matches,
                                       const HypercubeIndex& ix) {
  if (matches.size() != decomp.size()) {
    throw Error(ErrorCode::kInvalidArgument, decomp.query_id, "one match per component required");
  }
  const std::size_t n = matches.size();
  std::unordered_map<std::string_view, std::vector<std::uint32_t>> hits;
  for (std::size_t i = 0; i < n; ++i) {
    const ComponentMatch& m = matches[i];
    if (!m.label) continue;
    for (const Posting& p : ix.lookup(m.component.dimension, *m.label)) {
      auto [it, fresh] = hits.try_emplace(p.doc_id);
      if (fresh) it->second.assign(n, 0);
      it->second[i] = p.count;
    }
  }

  std::vector<ScoredDoc> out;
  out.reserve(hits.size());
  for (const auto& [doc_id, counts] : hits) {
    ScoredDoc d;
    d.doc_id = std::string(doc_id);
    d.evidence.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const ComponentMatch& m = matches[i];
      MatchEvidence ev;
      ev.dimension = m.component.dimension;
      ev.component = m.component.key;
      ev.component_text = m.component.text;
      if (counts[i] > 0) {
        ev.matched_label = m.label;
        ev.kind = m.kind;
        ev.sim = m.sim;
        ev.doc_count = counts[i];
        ++d.coverage;
        d.freq_score += counts[i];
        if (m.kind == MatchKind::kExact) ++d.indicator_score;
      }
      d.evidence.push_back(std::move(ev));
    }
    out.push_back(std::move(d));
  }
  std::sort(out.begin(), out.end(), [](const ScoredDoc& a, const ScoredDoc& b) { return a.doc_id < b.doc_id; });
  return out;
}

bool ranks_before(const ScoredDoc& a, const ScoredDoc& b) {
  if (a.coverage != b.coverage) return a.coverage > b.coverage;
  if (a.freq_score != b.freq_score) return a.freq_score > b.freq_score;
  if (a.indicator_score != b.indicator_score) return a.indicator_score > b.indicator_score;
  return a.doc_id < b.doc_id;
}

std::vector<ScoredDoc> rank(std::vector<ScoredDoc> scored, std::size_t l_q, std::size_t k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k", "k must be at least 1");
  std::erase_if(scored, [](const ScoredDoc& d) { return d.coverage == 0; });
  // D_return: documents covering every component.
  auto tier_end = std::stable_partition(scored.begin(), scored.end(),
                                        [&](const ScoredDoc& d) { return l_q > 0 && d.coverage == l_q; });
  std::sort(scored.begin(), tier_end, ranks_before);
  std::sort(tier_end, scored.end(), ranks_before);
  if (scored.size() > k) scored.resize(k);
  return scored;
}

RetrievalResult retrieve(std::string_view query, const HypercubeIndex& ix, const Encoder& enc,
                         const RetrievalOptions& opts,
                         const std::vector<std::pair<Dimension, std::string>>* external, std::string query_id) {
  check_tau(opts.tau);
  if (opts.k < 1) throw Error(ErrorCode::kInvalidArgument, "k", "k must be at least 1");
  RetrievalResult result;

  auto t0 = Clock::now();
  result.decomposition = decompose_query(query, ix, external, std::move(query_id));
  auto t1 = Clock::now();

  result.matches.reserve(result.decomposition.size());
  for (const auto& comp : result.decomposition.components) {
    result.matches.push_back(match_component(comp, ix, enc, opts.tau));
  }
  auto t2 = Clock::now();

  std::vector<ScoredDoc> scored = score_documents(result.decomposition, result.matches, ix);
  auto t3 = Clock::now();

  const std::size_t l_q = result.decomposition.size();
  result.ranked = rank(std::move(scored), l_q, opts.k);
  auto t4 = Clock::now();

  result.full_coverage = !result.ranked.empty() && l_q > 0 && result.ranked.front().coverage == l_q;
  result.timing.decompose = t1 - t0;
  result.timing.match = t2 - t1;
  result.timing.score = t3 - t2;
  result.timing.rank = t4 - t3;
  return result;
}

}  // namespace hyperrag
