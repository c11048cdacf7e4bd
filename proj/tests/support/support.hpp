#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <unistd.h>
#include <zlib.h>

#include "hyperrag/bm25.hpp"
#include "hyperrag/corpus.hpp"
#include "hyperrag/embedding.hpp"
#include "hyperrag/error.hpp"
#include "hyperrag/hypercube.hpp"
#include "hyperrag/labeling.hpp"
#include "hyperrag/retrieval.hpp"
#include "hyperrag/text.hpp"

namespace hyperrag::testing {

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(HYPERRAG_TEST_DATA_DIR) / name;
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("hyperrag-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path file(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::uint32_t crc32_of(std::string_view bytes) {
  return static_cast<std::uint32_t>(
      ::crc32(::crc32(0L, Z_NULL, 0), reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size())));
}

inline Corpus hurricane_corpus() { return load_corpus(data_path("hurricane_corpus.jsonl")); }

/// Index over the three case-study documents with their reference labels,
/// embedded with the default trigram encoder.
inline HypercubeIndex hurricane_index(const Encoder& enc) {
  const Corpus corpus = hurricane_corpus();
  HypercubeIndex ix = HypercubeIndex::build(corpus, load_precomputed_labels(data_path("hurricane_labels.jsonl"), corpus));
  ix.embed(enc);
  return ix;
}

inline const std::string kMelbourneQuery =
    "How much rainfall did Melbourne Beach, Florida receive from Tropical Storm Fay?";

inline Document make_doc(std::string id, std::string text) {
  Document d;
  d.id = std::move(id);
  d.text = std::move(text);
  return d;
}

// ---------------------------------------------------------------------------
// Random inputs

inline const std::vector<std::string>& syllables() {
  static const std::vector<std::string> s{"ka", "ro", "mi", "sen", "tal", "vor", "lu", "dre", "pha", "nim",
                                          "quo", "bes", "ard", "ilo", "run", "gem", "tas", "hol", "fen", "rai"};
  return s;
}

inline std::string random_word(std::mt19937_64& rng) {
  const auto& s = syllables();
  std::uniform_int_distribution<int> parts(2, 3);
  std::string w;
  for (int i = parts(rng); i > 0; --i) w += s[rng() % s.size()];
  return w;
}

struct RandomCube {
  Corpus corpus;
  LabelMap labels;
  DimensionSet dims;
  std::vector<Dimension> used;                  // dimensions drawn from
  std::vector<std::pair<Dimension, std::string>> label_pool;
};

/// Up to `max_docs` documents labeled over the first 1..max_dims canonical
/// dimensions from a pool of short, partly overlapping phrases.
inline RandomCube random_cube(std::mt19937_64& rng, std::size_t max_docs = 50, std::size_t max_dims = 6) {
  RandomCube c;
  const std::size_t n_dims = 1 + rng() % max_dims;
  for (std::size_t i = 0; i < n_dims; ++i) c.used.push_back(c.dims.all()[i]);

  const std::size_t pool = 4 + rng() % 20;
  std::set<std::pair<Dimension, std::string>> seen;
  for (std::size_t i = 0; i < pool; ++i) {
    const Dimension& d = c.used[rng() % c.used.size()];
    std::string phrase = random_word(rng);
    if (rng() % 3 == 0) phrase += " " + random_word(rng);
    // Occasional near-duplicates keep the semantic path busy.
    if (!c.label_pool.empty() && rng() % 4 == 0) phrase = c.label_pool[rng() % c.label_pool.size()].second + "s";
    if (seen.insert({d, phrase}).second) c.label_pool.emplace_back(d, phrase);
  }

  const std::size_t n_docs = 1 + rng() % max_docs;
  for (std::size_t i = 0; i < n_docs; ++i) {
    const std::string id = "d" + std::to_string(rng() % 1000) + "-" + std::to_string(i);
    std::string text;
    DocLabels dl;
    dl.doc_id = id;
    const std::size_t n_labels = rng() % 6;
    for (std::size_t j = 0; j < n_labels; ++j) {
      const auto& [dim, phrase] = c.label_pool[rng() % c.label_pool.size()];
      const auto count = static_cast<std::uint32_t>(1 + rng() % 5);
      dl.add(dim, normalize_label(phrase), phrase, count);
      text += phrase + " ";
    }
    text += random_word(rng);
    c.corpus.add(make_doc(id, text));
    c.labels.emplace(id, std::move(dl));
  }
  return c;
}

/// A query mixing label phrases with random words.
inline std::string random_query(std::mt19937_64& rng, const RandomCube& c) {
  std::string q = "what about";
  const std::size_t parts = 1 + rng() % 4;
  for (std::size_t i = 0; i < parts; ++i) {
    q += ' ';
    if (rng() % 3 != 0 && !c.label_pool.empty()) {
      q += c.label_pool[rng() % c.label_pool.size()].second;
    } else {
      q += random_word(rng);
    }
  }
  return q + "?";
}

// ---------------------------------------------------------------------------
// Brute-force oracles

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return std::clamp(s, -1.0, 1.0);
}

/// Threshold scan that re-encodes every vocabulary key instead of reading
/// stored vectors.
inline std::vector<Neighbor> oracle_neighbors(const std::string& component, const Dimension& dim,
                                              const HypercubeIndex& ix, const Encoder& enc, double tau) {
  std::vector<Neighbor> out;
  Vector q;
  try {
    q = enc.encode(component);
  } catch (const Error&) {
    return out;
  }
  for (const auto& key : ix.vocab(dim)) {
    Vector v;
    try {
      v = enc.encode(key);
    } catch (const Error&) {
      continue;
    }
    const double s = dot(q.values, v.values);
    if (s >= tau) out.push_back({key, s});
  }
  std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
    return a.sim != b.sim ? a.sim > b.sim : a.key < b.key;
  });
  return out;
}

struct OracleDoc {
  std::string doc_id;
  std::size_t coverage = 0;
  std::size_t indicator = 0;
  std::uint64_t freq = 0;
};

/// Full scan over every document's forward labels, then a plain sort on the
/// ranking key with the full-coverage tier first.
inline std::vector<OracleDoc> oracle_rank(const QueryDecomposition& decomp, const HypercubeIndex& ix,
                                          const Encoder& enc, double tau, std::size_t k) {
  struct Resolved {
    Dimension dim;
    std::optional<std::string> label;
    bool exact = false;
  };
  std::vector<Resolved> resolved;
  for (const auto& c : decomp.components) {
    Resolved r{c.dimension, std::nullopt, false};
    const auto& vocab = ix.vocab(c.dimension);
    if (std::find(vocab.begin(), vocab.end(), c.key) != vocab.end()) {
      r.label = c.key;
      r.exact = true;
    } else if (auto n = oracle_neighbors(c.key, c.dimension, ix, enc, tau); !n.empty()) {
      r.label = n.front().key;
    }
    resolved.push_back(std::move(r));
  }

  std::vector<OracleDoc> docs;
  for (const auto& id : ix.doc_ids()) {
    OracleDoc d{id};
    const DocLabels& fl = ix.forward(id);
    for (const auto& r : resolved) {
      if (!r.label) continue;
      auto it = fl.counts.find(LabelRef{r.dim, *r.label});
      if (it == fl.counts.end()) continue;
      ++d.coverage;
      d.freq += it->second;
      if (r.exact) ++d.indicator;
    }
    if (d.coverage > 0) docs.push_back(d);
  }
  const std::size_t l_q = decomp.size();
  std::sort(docs.begin(), docs.end(), [l_q](const OracleDoc& a, const OracleDoc& b) {
    const bool fa = a.coverage == l_q, fb = b.coverage == l_q;
    return std::make_tuple(!fa, -static_cast<long long>(a.coverage), -static_cast<long double>(a.freq),
                           -static_cast<long long>(a.indicator), a.doc_id) <
           std::make_tuple(!fb, -static_cast<long long>(b.coverage), -static_cast<long double>(b.freq),
                           -static_cast<long long>(b.indicator), b.doc_id);
  });
  if (docs.size() > k) docs.resize(k);
  return docs;
}

/// Okapi BM25 recomputed from raw token lists with no precomputed tables.
inline double oracle_bm25(const Corpus& corpus, const std::vector<std::string>& query, const std::string& doc_id,
                          double k1, double b) {
  std::vector<std::vector<std::string>> toks;
  double total = 0.0;
  std::size_t target = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    toks.push_back(tokenize_norm(corpus[i].text));
    total += static_cast<double>(toks.back().size());
    if (corpus[i].id == doc_id) target = i;
  }
  const double n = static_cast<double>(corpus.size());
  const double avg = total / n;
  double score = 0.0;
  for (const auto& term : query) {
    double df = 0.0;
    for (const auto& t : toks) df += std::find(t.begin(), t.end(), term) != t.end() ? 1.0 : 0.0;
    const double tf = static_cast<double>(std::count(toks[target].begin(), toks[target].end(), term));
    if (tf == 0.0) continue;
    const double idf = std::log((n - df + 0.5) / (df + 0.5) + 1.0);
    const double len = static_cast<double>(toks[target].size());
    score += idf * tf * (k1 + 1.0) / (tf + k1 * (1.0 - b + b * len / avg));
  }
  return score;
}

}  // namespace hyperrag::testing
