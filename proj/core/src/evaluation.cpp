#include "hyperrag/evaluation.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "hyperrag/error.hpp"
#include "hyperrag/text.hpp"

namespace hyperrag {
namespace {

using Clock = std::chrono::steady_clock;

double to_us(std::chrono::nanoseconds ns) { return static_cast<double>(ns.count()) / 1000.0; }

void fill_hits(QueryEvalRow& row, const std::vector<std::string>& ranked) {
  const std::unordered_set<std::string> gold(row.gold.begin(), row.gold.end());
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (!gold.contains(ranked[i])) continue;
    if (row.reciprocal_rank == 0.0) row.reciprocal_rank = 1.0 / static_cast<double>(i + 1);
    if (i < 1) row.hit_at_1 = true;
    if (i < 3) row.hit_at_3 = true;
    if (i < 5) row.hit_at_5 = true;
  }
}

void check_gold(const QueryRecord& q, const std::function<bool(const std::string&)>& indexed) {
  if (q.gold_doc_ids.empty()) throw Error(ErrorCode::kMissingGold, q.id, "no gold_doc_ids");
  for (const auto& g : q.gold_doc_ids) {
    if (!indexed(g)) throw Error(ErrorCode::kMissingGold, q.id, "gold document '" + g + "' not indexed");
  }
}

// Off-topic vocabulary: air quality and stratospheric ozone.
constexpr std::array<std::string_view, 72> kNoiseContent = {
    "ozone",      "pollution",   "particulate", "emissions",   "smog",        "aerosol",    "nitrogen",
    "dioxide",    "sulfur",      "factory",     "traffic",     "urban",       "asthma",     "stratosphere",
    "chlorofluorocarbons", "layer", "depletion", "ultraviolet", "radiation",  "antarctic",  "monitoring",
    "station",    "concentration", "exposure",  "respiratory", "health",      "vehicle",    "exhaust",
    "combustion", "industrial",  "regulation",  "policy",      "standards",   "compliance", "sensor",
    "network",    "airborne",    "soot",        "haze",        "visibility",  "chemistry",  "reaction",
    "catalyst",   "filter",      "smokestack",  "refinery",    "diesel",      "benzene",    "methane",
    "agriculture", "fertilizer", "ammonia",     "livestock",   "landfill",    "incinerator", "plastics",
    "microplastics", "recycling", "waste",      "groundwater", "pesticide",   "toxicity",   "mercury",
    "lead",       "cadmium",     "arsenic",     "sediment",    "river",       "estuary",    "algae",
    "nutrient",   "runoff"};

constexpr std::array<std::string_view, 26> kNoiseFunction = {
    "the", "of", "and", "in", "to", "a", "is", "was", "for", "with", "on", "that", "by",
    "as", "from", "at", "this", "were", "are", "which", "their", "what", "how", "during", "about", "its"};

std::size_t bounded(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

}  // namespace

LatencyStats summarize(std::vector<double> samples) {
  LatencyStats s;
  if (samples.empty()) return s;
  std::sort(samples.begin(), samples.end());
  double sum = 0.0;
  for (double x : samples) sum += x;
  s.mean_us = sum / static_cast<double>(samples.size());
  const std::size_t n = samples.size();
  s.median_us = n % 2 == 1 ? samples[n / 2] : 0.5 * (samples[n / 2 - 1] + samples[n / 2]);
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
  s.p95_us = samples[std::max<std::size_t>(rank, 1) - 1];
  return s;
}

void recompute_aggregates(EvalReport& report) {
  const auto n = static_cast<double>(report.rows.size());
  report.recall_at_1 = report.recall_at_3 = report.recall_at_5 = report.mrr = 0.0;
  std::vector<double> totals;
  for (const auto& r : report.rows) {
    report.recall_at_1 += r.hit_at_1 ? 1.0 : 0.0;
    report.recall_at_3 += r.hit_at_3 ? 1.0 : 0.0;
    report.recall_at_5 += r.hit_at_5 ? 1.0 : 0.0;
    report.mrr += r.reciprocal_rank;
    totals.push_back(r.total_us);
  }
  if (n > 0) {
    report.recall_at_1 /= n;
    report.recall_at_3 /= n;
    report.recall_at_5 /= n;
    report.mrr /= n;
  }
  report.latency = summarize(std::move(totals));
}

EvalReport eval_recall(const HypercubeIndex& ix, const Encoder& enc, const std::vector<QueryRecord>& queries,
                       std::size_t k, double tau, const ExternalDecompositions* decompositions) {
  for (const auto& q : queries) check_gold(q, [&](const std::string& id) { return ix.contains_doc(id); });
  EvalReport report;
  report.engine = "hypercube";
  report.tau = tau;
  report.k = k;
  report.encoder = enc.spec();
  report.corpus_size = ix.doc_count();
  const RetrievalOptions opts{tau, std::max<std::size_t>(k, 5)};
  for (const auto& q : queries) {
    const auto* external = decompositions ? decompositions->find(q.id, q.question) : nullptr;
    const RetrievalResult res = retrieve(q.question, ix, enc, opts, external, q.id);
    QueryEvalRow row;
    row.query_id = q.id;
    row.gold = q.gold_doc_ids;
    std::vector<std::string> ranked;
    for (const auto& d : res.ranked) ranked.push_back(d.doc_id);
    fill_hits(row, ranked);
    row.retrieved.assign(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(std::min(k, ranked.size())));
    row.decompose_us = to_us(res.timing.decompose);
    row.match_us = to_us(res.timing.match);
    row.score_us = to_us(res.timing.score);
    row.rank_us = to_us(res.timing.rank);
    row.total_us = to_us(res.timing.total());
    report.rows.push_back(std::move(row));
  }
  recompute_aggregates(report);
  return report;
}

EvalReport eval_bm25(const Bm25Index& bm25, const std::vector<QueryRecord>& queries, std::size_t k) {
  for (const auto& q : queries) {
    check_gold(q, [&](const std::string& id) {
      try {
        bm25.doc_len(id);
        return true;
      } catch (const Error&) {
        return false;
      }
    });
  }
  EvalReport report;
  report.engine = "bm25";
  report.tau = 0.0;
  report.k = k;
  report.encoder = "none";
  report.corpus_size = bm25.doc_count();
  for (const auto& q : queries) {
    const auto t0 = Clock::now();
    const auto hits = bm25.retrieve(q.question, std::max<std::size_t>(k, 5));
    const auto t1 = Clock::now();
    QueryEvalRow row;
    row.query_id = q.id;
    row.gold = q.gold_doc_ids;
    std::vector<std::string> ranked;
    for (const auto& h : hits) ranked.push_back(h.doc_id);
    fill_hits(row, ranked);
    row.retrieved.assign(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(std::min(k, ranked.size())));
    row.score_us = row.total_us = to_us(t1 - t0);
    report.rows.push_back(std::move(row));
  }
  recompute_aggregates(report);
  return report;
}

std::string to_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["engine"] = report.engine;
  j["config"] = {{"tau", report.tau}, {"k", report.k}, {"encoder", report.encoder}, {"corpus_size", report.corpus_size}};
  j["aggregates"] = {{"recall@1", report.recall_at_1},
                     {"recall@3", report.recall_at_3},
                     {"recall@5", report.recall_at_5},
                     {"mrr", report.mrr},
                     {"latency_us",
                      {{"mean", report.latency.mean_us},
                       {"median", report.latency.median_us},
                       {"p95", report.latency.p95_us}}}};
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    j["rows"].push_back({{"query_id", r.query_id},
                         {"retrieved", r.retrieved},
                         {"gold", r.gold},
                         {"hit@1", r.hit_at_1},
                         {"hit@3", r.hit_at_3},
                         {"hit@5", r.hit_at_5},
                         {"reciprocal_rank", r.reciprocal_rank},
                         {"latency_us",
                          {{"decompose", r.decompose_us},
                           {"match", r.match_us},
                           {"score", r.score_us},
                           {"rank", r.rank_us},
                           {"total", r.total_us}}}});
  }
  return j.dump(2);
}

Corpus inject_noise(const Corpus& corpus, std::size_t n, std::uint64_t seed, const Gazetteer* in_domain) {
  Corpus out = corpus;
  if (n == 0) return out;

  std::unordered_set<std::string> banned;
  if (in_domain != nullptr) {
    for (const auto& [dim, phrases] : in_domain->entries()) {
      for (const auto& p : phrases) banned.insert(p.substr(0, p.find(' ')));
    }
  }
  std::vector<std::string_view> content;
  std::vector<std::string_view> function;
  for (auto w : kNoiseContent) {
    if (!banned.contains(std::string(w))) content.push_back(w);
  }
  for (auto w : kNoiseFunction) {
    if (!banned.contains(std::string(w))) function.push_back(w);
  }
  if (content.empty()) throw Error(ErrorCode::kInvalidArgument, "noise", "noise vocabulary fully overlaps the gazetteer");

  std::mt19937_64 rng(seed);
  std::size_t serial = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::string id;
    do {
      std::ostringstream s;
      s << "noise-" << std::setw(6) << std::setfill('0') << serial++;
      id = s.str();
    } while (out.contains(id));

    const std::size_t words = 40 + bounded(rng, 161);
    std::string text;
    text.reserve(words * 8);
    for (std::size_t w = 0; w < words; ++w) {
      if (w > 0) text += (w % 12 == 0) ? ". " : " ";
      const bool use_function = !function.empty() && bounded(rng, 100) < 45;
      text += use_function ? function[bounded(rng, function.size())] : content[bounded(rng, content.size())];
    }
    text += '.';
    Document doc;
    doc.id = std::move(id);
    doc.title = "Air quality report " + std::to_string(i + 1);
    doc.text = std::move(text);
    out.add(std::move(doc));
  }
  return out;
}

namespace {

struct EngineUnderTest {
  std::string name;
  std::function<void(const QueryRecord&)> run;
};

std::vector<double> time_passes(const EngineUnderTest& engine, const std::vector<QueryRecord>& queries,
                                std::size_t reps, std::size_t threads) {
  auto pass = [&] {
    if (threads <= 1) {
      for (const auto& q : queries) engine.run(q);
      return;
    }
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < queries.size(); i += threads) engine.run(queries[i]);
      });
    }
    for (auto& th : pool) th.join();
  };
  pass();  // warm-up, discarded
  std::vector<double> samples;
  samples.reserve(reps);
  for (std::size_t r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    pass();
    const auto t1 = Clock::now();
    samples.push_back(to_us(t1 - t0) / static_cast<double>(queries.size()));
  }
  return samples;
}

}  // namespace

std::vector<BenchRow> bench_latency(const Corpus& corpus, const LabelMap& labels, const Gazetteer* gazetteer,
                                    const std::vector<QueryRecord>& queries, const BenchConfig& config) {
  if (config.reps < 5) throw Error(ErrorCode::kInvalidArgument, "reps", "at least 5 repetitions required");
  for (double f : config.fractions) {
    if (!(f > 0.0 && f <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "fractions", "fractions must lie in (0, 1]");
  }
  check_tau(config.tau);
  std::vector<BenchRow> rows;
  if (queries.empty() || corpus.empty()) return rows;

  const TrigramEncoder enc(config.embed_dim);
  const DimensionSet dims = gazetteer != nullptr ? gazetteer->dimensions() : DimensionSet{};

  auto run_cell = [&](const Corpus& sub, const LabelMap& sub_labels, double fraction, std::size_t noise) {
    if (config.hypercube) {
      HypercubeIndex ix = HypercubeIndex::build(sub, sub_labels, dims);
      ix.embed(enc);
      const RetrievalOptions opts{config.tau, config.k};
      EngineUnderTest e{"hypercube", [&](const QueryRecord& q) { (void)retrieve(q.question, ix, enc, opts); }};
      BenchRow row{e.name, fraction, noise, sub.size(), time_passes(e, queries, config.reps, config.threads), {}};
      row.stats = summarize(row.samples_us);
      rows.push_back(std::move(row));
    }
    if (config.bm25_baseline) {
      const Bm25Index bm25 = Bm25Index::build(sub, config.bm25);
      EngineUnderTest e{"bm25", [&](const QueryRecord& q) { (void)bm25.retrieve(q.question, config.k); }};
      BenchRow row{e.name, fraction, noise, sub.size(), time_passes(e, queries, config.reps, config.threads), {}};
      row.stats = summarize(row.samples_us);
      rows.push_back(std::move(row));
    }
  };

  auto labels_for = [&](const Corpus& sub) {
    LabelMap out;
    for (const auto& doc : sub) {
      if (auto it = labels.find(doc.id); it != labels.end()) {
        out.emplace(doc.id, it->second);
      } else if (gazetteer != nullptr) {
        out.emplace(doc.id, gazetteer->extract(doc));
      }
    }
    return out;
  };

  for (double f : config.fractions) {
    const auto n = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(f * static_cast<double>(corpus.size()))));
    const Corpus sub = corpus.prefix(n);
    run_cell(sub, labels_for(sub), f, 0);
  }
  if (config.noise > 0) {
    const Corpus noisy = inject_noise(corpus, config.noise, config.seed, gazetteer);
    run_cell(noisy, labels_for(noisy), 1.0, config.noise);
  }
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "engine,fraction,noise,mean_us,median_us,p95_us\n";
  out << std::fixed;
  for (const auto& r : rows) {
    out << r.engine << ',' << std::setprecision(4) << r.fraction << ',' << r.noise << ',' << std::setprecision(3)
        << r.stats.mean_us << ',' << r.stats.median_us << ',' << r.stats.p95_us << '\n';
  }
  return out.str();
}

}  // namespace hyperrag
