// Acceptance gate: one line per criterion, exit status 0 only if all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "hyperrag/bm25.hpp"
#include "hyperrag/evaluation.hpp"
#include "hyperrag/synthetic.hpp"
#include "support.hpp"

namespace hyperrag {
namespace {

using testing::make_doc;

struct Verdict {
  bool ok = false;
  std::string detail;
};

const Dimension kTheme{"THEME"};

std::string ids_of(const std::vector<ScoredDoc>& docs) {
  std::string s;
  for (const auto& d : docs) s += (s.empty() ? "" : ",") + d.doc_id;
  return s;
}

// 1. Docs A-D cover 3,3,2,1 of three components.
Verdict ranking_table() {
  Gazetteer g;
  g.add(Dimension{"LOCATION"}, "Melbourne Beach");
  g.add(Dimension{"EVENT"}, "Tropical Storm Fay");
  g.add(kTheme, "rainfall");
  auto corpus_for = [](bool with_ab) {
    Corpus c;
    if (with_ab) {
      c.add(make_doc("A", "Rainfall at Melbourne Beach peaked as Tropical Storm Fay stalled."));
      c.add(make_doc("B", "Tropical Storm Fay brought record rainfall to Melbourne Beach."));
    }
    c.add(make_doc("C", "Tropical Storm Fay produced heavy rainfall across the state."));
    c.add(make_doc("D", "Tropical Storm Fay weakened over land."));
    return c;
  };
  const TrigramEncoder enc;
  const std::string q = "rainfall at Melbourne Beach from Tropical Storm Fay";
  std::ostringstream detail;
  bool ok = true;
  // The reduced corpus no longer holds "melbourne beach", so its query keeps
  // the three components decomposed against the full cube.
  std::vector<std::pair<Dimension, std::string>> components;
  for (bool with_ab : {true, false}) {
    const Corpus c = corpus_for(with_ab);
    HypercubeIndex ix = build_index(c, extract_all(c, g));
    ix.embed(enc);
    const RetrievalResult r = retrieve(q, ix, enc, {kDefaultTau, 4}, with_ab ? nullptr : &components);
    if (with_ab) {
      for (const auto& comp : r.decomposition.components) components.emplace_back(comp.dimension, comp.key);
    }
    std::string cov;
    for (const auto& d : r.ranked) cov += std::to_string(d.coverage);
    const std::string got = ids_of(r.ranked);
    const std::string want = with_ab ? "A,B,C,D" : "C,D";
    const std::string want_cov = with_ab ? "3321" : "21";
    ok = ok && r.decomposition.size() == 3 && got == want && cov == want_cov && r.full_coverage == with_ab;
    detail << (with_ab ? "all: " : " without A,B: ") << got << " coverage " << cov;
  }
  return {ok, detail.str()};
}

// 2. Melbourne Beach query on the three case-study documents.
Verdict case_study() {
  const TrigramEncoder enc;
  const HypercubeIndex ix = testing::hurricane_index(enc);
  const double tau = 0.5;  // below cos(rainfall, rain) = 0.577
  const RetrievalResult r = retrieve(testing::kMelbourneQuery, ix, enc, {tau, 3});
  if (r.ranked.empty()) return {false, "no results"};
  const ScoredDoc& top = r.ranked[0];
  std::set<std::tuple<std::string, std::string, std::string, std::string>> matched;
  for (const auto& ev : top.evidence) {
    if (ev.matched_label) {
      matched.emplace(ev.dimension.name(), *ev.matched_label, std::string(to_string(ev.kind)), ev.component);
    }
  }
  const std::set<std::tuple<std::string, std::string, std::string, std::string>> want{
      {"LOCATION", "melbourne beach", "exact", "melbourne beach"},
      {"EVENT", "tropical storm fay", "exact", "tropical storm fay"},
      {"THEME", "rain", "semantic", "rainfall"}};
  const bool ok = top.doc_id == "565" && matched == want && top.freq_score == 7;
  std::ostringstream d;
  d << "tau " << tau << ", ranking " << ids_of(r.ranked) << ", top freq_score " << top.freq_score << ", "
    << matched.size() << " matched evidence rows";
  return {ok, d.str()};
}

std::string render(const std::vector<ScoredDoc>& docs) {
  std::string s;
  for (const auto& d : docs) {
    s += d.doc_id + "|" + std::to_string(d.coverage) + "|" + std::to_string(d.freq_score) + "|" +
         std::to_string(d.indicator_score) + ";";
  }
  return s;
}

std::string render(const std::vector<testing::OracleDoc>& docs) {
  std::string s;
  for (const auto& d : docs) {
    s += d.doc_id + "|" + std::to_string(d.coverage) + "|" + std::to_string(d.freq) + "|" +
         std::to_string(d.indicator) + ";";
  }
  return s;
}

// 3. retrieve() vs full-scan coverage oracle.
Verdict oracle_equivalence() {
  std::mt19937_64 rng(1001);
  const TrigramEncoder enc(128);
  const std::vector<double> taus{0.3, 0.5, 0.7, 0.9, 1.0};
  std::size_t mismatches = 0, with_results = 0;
  for (int i = 0; i < 1000; ++i) {
    auto cube = testing::random_cube(rng, 50, 6);
    HypercubeIndex ix = build_index(cube.corpus, cube.labels, cube.dims);
    ix.embed(enc);
    const std::string q = testing::random_query(rng, cube);
    const double tau = taus[rng() % taus.size()];
    const std::size_t k = 1 + rng() % 10;
    const RetrievalResult r = retrieve(q, ix, enc, {tau, k});
    if (!r.ranked.empty()) ++with_results;
    if (render(r.ranked) != render(testing::oracle_rank(r.decomposition, ix, enc, tau, k))) ++mismatches;
  }
  return {mismatches == 0,
          "1000 cases, " + std::to_string(with_results) + " non-empty, " + std::to_string(mismatches) + " mismatches"};
}

// 4. Symmetry and persistence on random indexes.
Verdict symmetry_persistence() {
  std::mt19937_64 rng(404);
  const TrigramEncoder enc(64);
  testing::TempDir tmp;
  std::size_t failures = 0;
  std::string first;
  for (int i = 0; i < 100; ++i) {
    auto cube = testing::random_cube(rng, 50, 6);
    HypercubeIndex ix = build_index(cube.corpus, cube.labels, cube.dims);
    if (i % 2 == 0) ix.embed(enc);
    std::string why;
    const auto path = tmp.file("ix" + std::to_string(i) + ".hcube");
    save_index(ix, path);
    const HypercubeIndex back = load_index(path);
    if (!ix.verify_symmetry(&why) || !back.verify_symmetry(&why) || !(back == ix)) {
      ++failures;
      if (first.empty()) first = why.empty() ? "round-trip inequality" : why;
    }
  }
  return {failures == 0, "100 indexes, " + std::to_string(failures) + " failures" + (first.empty() ? "" : ": " + first)};
}

// 5. Noise invariance and latency scaling.
Verdict noise_scaling() {
  const SyntheticDomain dom = make_hurricane_domain(844, 60, 42);
  const LabelMap labels = extract_all(dom.corpus, dom.gazetteer);
  constexpr std::size_t kNoise = 13000;
  const Corpus noisy = inject_noise(dom.corpus, kNoise, 42, &dom.gazetteer);
  const TrigramEncoder enc;

  HypercubeIndex clean_ix = build_index(dom.corpus, labels);
  clean_ix.embed(enc);
  HypercubeIndex noisy_ix = build_index(noisy, extract_all(noisy, dom.gazetteer));
  noisy_ix.embed(enc);
  std::size_t differing = 0;
  for (const auto& q : dom.queries) {
    const auto a = retrieve(q.question, clean_ix, enc);
    const auto b = retrieve(q.question, noisy_ix, enc);
    if (render(a.ranked) != render(b.ranked)) ++differing;
  }

  BenchConfig cfg;
  cfg.fractions = {1.0};
  cfg.noise = kNoise;
  cfg.reps = 20;
  cfg.seed = 42;
  constexpr int kRuns = 3;
  bool trend = true;
  std::ostringstream d;
  d << std::fixed;
  d.precision(2);
  d << noisy.size() << "/" << dom.corpus.size() << " docs, " << differing << "/" << dom.queries.size()
    << " queries differ; ratios (hypercube, bm25) per run:";
  for (int run = 0; run < kRuns; ++run) {
    const auto rows = bench_latency(dom.corpus, labels, &dom.gazetteer, dom.queries, cfg);
    std::map<std::pair<std::string, std::size_t>, double> mean;
    for (const auto& r : rows) mean[{r.engine, r.noise}] = r.stats.mean_us;
    const double hc = mean[{"hypercube", kNoise}] / mean[{"hypercube", 0}];
    const double bm = mean[{"bm25", kNoise}] / mean[{"bm25", 0}];
    trend = trend && hc <= 2.0 && bm >= 5.0;
    d << " (" << hc << ", " << bm << ")";
  }
  return {differing == 0 && trend, d.str()};
}

// 6. Recall@3 as tau rises.
Verdict tau_behavior() {
  const TrigramEncoder enc;
  const HypercubeIndex ix = testing::hurricane_index(enc);
  const auto queries = load_queries(testing::data_path("hurricane_queries.jsonl"));
  const std::vector<double> taus{0.5, 0.7, 0.9, 1.0};
  std::vector<double> recall;
  bool needs_semantic = false;
  for (double tau : taus) {
    recall.push_back(eval_recall(ix, enc, queries, 3, tau).recall_at_3);
    for (const auto& q : queries) {
      for (const auto& m : retrieve(q.question, ix, enc, {tau, 3}).matches) {
        needs_semantic = needs_semantic || m.kind == MatchKind::kSemantic;
      }
    }
  }
  const auto peak = std::max_element(recall.begin(), recall.end()) - recall.begin();
  bool ok = true;
  for (std::size_t i = peak + 1; i < recall.size(); ++i) ok = ok && recall[i] <= recall[i - 1];
  if (needs_semantic) ok = ok && recall.back() < recall[peak];
  std::ostringstream d;
  d << "recall@3";
  for (std::size_t i = 0; i < taus.size(); ++i) d << " tau=" << taus[i] << ":" << recall[i];
  return {ok && needs_semantic, d.str()};
}

// 7. BM25 against the naive formula.
Verdict bm25_reference() {
  std::mt19937_64 rng(707);
  const std::vector<std::string> words{"rain", "storm", "fay", "beach", "sand", "levee", "the",
                                       "of",   "flood", "surge", "gulf",  "wind", "dune",  "coast"};
  double worst = 0.0;
  std::size_t checks = 0;
  for (int i = 0; i < 100; ++i) {
    Corpus c;
    const int n = 1 + static_cast<int>(rng() % 100);
    for (int j = 0; j < n; ++j) {
      std::string text;
      for (int w = 0; w < 1 + static_cast<int>(rng() % 30); ++w) text += words[rng() % words.size()] + " ";
      c.add(make_doc("d" + std::to_string(j), text));
    }
    const Bm25Params p{static_cast<double>(rng() % 300) / 100.0, static_cast<double>(rng() % 101) / 100.0};
    const Bm25Index ix = Bm25Index::build(c, p);
    std::vector<std::string> q;
    for (int w = 0; w < 1 + static_cast<int>(rng() % 5); ++w) q.push_back(words[rng() % words.size()]);
    for (const auto& d : c) {
      worst = std::max(worst, std::abs(ix.score(q, d.id) - testing::oracle_bm25(c, q, d.id, p.k1, p.b)));
      ++checks;
    }
  }
  std::ostringstream d;
  d << checks << " scores, max |diff| " << worst;
  return {worst <= 1e-9, d.str()};
}

// 8. Neighbor scan vs brute force, with tau monotonicity.
Verdict embedding_contract() {
  std::mt19937_64 rng(808);
  const TrigramEncoder enc;
  const std::vector<double> taus{0.0, 0.25, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 1.0};
  std::size_t mismatches = 0, monotone_breaks = 0, nonempty = 0;
  for (int i = 0; i < 200; ++i) {
    Corpus c;
    c.add(make_doc("d", "x"));
    LabelMap m;
    m["d"].doc_id = "d";
    const int n = 1 + static_cast<int>(rng() % 40);
    std::vector<std::string> keys;
    for (int j = 0; j < n; ++j) {
      keys.push_back(testing::random_word(rng));
      m["d"].add(kTheme, keys.back(), keys.back(), 1);
    }
    HypercubeIndex ix = build_index(c, m);
    ix.embed(enc);
    const std::string comp = rng() % 2 ? keys[rng() % keys.size()] + "s" : testing::random_word(rng);
    std::vector<Neighbor> prev;
    bool first = true;
    for (double tau : taus) {
      const auto got = semantic_neighbors(comp, kTheme, ix, enc, tau);
      if (got != testing::oracle_neighbors(comp, kTheme, ix, enc, tau)) ++mismatches;
      if (!got.empty()) ++nonempty;
      // Each result set is a subset of the previous (lower-tau) one.
      if (!first) {
        for (const auto& g : got) {
          if (std::find(prev.begin(), prev.end(), g) == prev.end()) ++monotone_breaks;
        }
      }
      prev = got;
      first = false;
    }
  }
  return {mismatches == 0 && monotone_breaks == 0,
          "200 vocabularies x " + std::to_string(taus.size()) + " taus, " + std::to_string(nonempty) + " non-empty, " +
              std::to_string(mismatches) + " mismatches, " + std::to_string(monotone_breaks) + " monotonicity breaks"};
}

struct Criterion {
  int number;
  std::string name;
  double limit_s;
  std::function<Verdict()> check;
};

}  // namespace
}  // namespace hyperrag

int main() {
  using namespace hyperrag;
  const std::vector<Criterion> criteria{
      {1, "ranking table reproduction", 1.0, ranking_table},
      {2, "case study reproduction", 1.0, case_study},
      {3, "oracle equivalence", 60.0, oracle_equivalence},
      {4, "index symmetry and persistence", 30.0, symmetry_persistence},
      {5, "noise invariance and scaling", 300.0, noise_scaling},
      {6, "tau behavior", 10.0, tau_behavior},
      {7, "bm25 reference equivalence", 30.0, bm25_reference},
      {8, "embedding contract", 30.0, embedding_contract},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.limit_s;
    const bool ok = v.ok && in_time;
    if (!ok) ++failed;
    std::printf("%s %d %s: %s [%.2f s, limit %.0f s%s]\n", ok ? "PASS" : "FAIL", c.number, c.name.c_str(),
                v.detail.c_str(), secs, c.limit_s, in_time ? "" : ", over time");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
