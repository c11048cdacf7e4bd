#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyperrag/bm25.hpp"
#include "hyperrag/corpus.hpp"
#include "hyperrag/embedding.hpp"
#include "hyperrag/hypercube.hpp"
#include "hyperrag/labeling.hpp"
#include "hyperrag/retrieval.hpp"

namespace hyperrag {

struct LatencyStats {
  double mean_us = 0.0;
  double median_us = 0.0;
  double p95_us = 0.0;
};

/// Mean, median (midpoint of the two middle samples for even counts) and
/// nearest-rank p95. All zero for an empty sample.
LatencyStats summarize(std::vector<double> samples_us);

struct QueryEvalRow {
  std::string query_id;
  std::vector<std::string> retrieved;  // top-k
  std::vector<std::string> gold;
  bool hit_at_1 = false;
  bool hit_at_3 = false;
  bool hit_at_5 = false;
  double reciprocal_rank = 0.0;
  double decompose_us = 0.0;
  double match_us = 0.0;
  double score_us = 0.0;
  double rank_us = 0.0;
  double total_us = 0.0;
};

struct EvalReport {
  std::string engine;
  std::vector<QueryEvalRow> rows;
  double recall_at_1 = 0.0;
  double recall_at_3 = 0.0;
  double recall_at_5 = 0.0;
  double mrr = 0.0;
  LatencyStats latency;
  // config echo
  double tau = kDefaultTau;
  std::size_t k = kDefaultK;
  std::string encoder;
  std::size_t corpus_size = 0;
};

/// Hit flags and reciprocal rank are taken over the top max(k, 5) results so
/// recall@{1,3,5} are always defined; `retrieved` keeps the top k.
/// Throws MissingGold when a query lacks gold ids or names an unindexed doc.
EvalReport eval_recall(const HypercubeIndex& ix, const Encoder& enc, const std::vector<QueryRecord>& queries,
                       std::size_t k, double tau, const ExternalDecompositions* decompositions = nullptr);

/// The same harness over the BM25 baseline.
EvalReport eval_bm25(const Bm25Index& bm25, const std::vector<QueryRecord>& queries, std::size_t k);

/// Recomputes recall/MRR/latency aggregates from `report.rows`.
void recompute_aggregates(EvalReport& report);

std::string to_json(const EvalReport& report);

/// Appends `n` off-topic documents whose words never begin a phrase of
/// `in_domain` (so gazetteer extraction finds nothing in them). Equal seeds
/// give equal corpora.
Corpus inject_noise(const Corpus& corpus, std::size_t n, std::uint64_t seed, const Gazetteer* in_domain = nullptr);

struct BenchConfig {
  std::vector<double> fractions{0.125, 0.25, 0.5, 1.0};
  std::size_t noise = 0;
  std::size_t reps = 5;
  std::uint64_t seed = 42;
  double tau = kDefaultTau;
  std::size_t k = kDefaultK;
  Bm25Params bm25;
  std::size_t embed_dim = TrigramEncoder::kDefaultDim;
  bool hypercube = true;
  bool bm25_baseline = true;
  /// >1 splits each pass across threads; samples then measure throughput
  /// (wall time per query), not single-query latency.
  std::size_t threads = 1;
};

struct BenchRow {
  std::string engine;
  double fraction = 1.0;
  std::size_t noise = 0;
  std::size_t corpus_size = 0;
  std::vector<double> samples_us;  // one per repetition, warm-up excluded
  LatencyStats stats;
};

/// Per-query latency per engine and corpus size. Each cell runs one warm-up
/// pass over all queries, then `reps` timed passes; a sample is the mean
/// per-query time of one pass. Index build is never timed. When
/// `noise` > 0 an extra row per engine covers the full corpus plus that many
/// injected documents (labeled by `gazetteer` when given).
std::vector<BenchRow> bench_latency(const Corpus& corpus, const LabelMap& labels, const Gazetteer* gazetteer,
                                    const std::vector<QueryRecord>& queries, const BenchConfig& config);

/// Columns: engine,fraction,noise,mean_us,median_us,p95_us.
std::string bench_csv(const std::vector<BenchRow>& rows);

}  // namespace hyperrag
