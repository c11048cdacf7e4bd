#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "hyperrag/bm25.hpp"
#include "hyperrag/corpus.hpp"
#include "hyperrag/embedding.hpp"
#include "hyperrag/error.hpp"
#include "hyperrag/evaluation.hpp"
#include "hyperrag/hypercube.hpp"
#include "hyperrag/labeling.hpp"
#include "hyperrag/retrieval.hpp"
#include "hyperrag/text.hpp"

namespace hyperrag::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 42;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BuildArgs {
  std::string corpus;
  std::vector<std::string> labels;
  std::string gazetteer;
  std::vector<std::string> dimensions;
  std::string encoder = "trigram";
  std::size_t embed_dim = TrigramEncoder::kDefaultDim;
  std::string out;
  bool json = false;
};

struct QueryArgs {
  std::string index;
  std::string query;
  std::string query_id;
  std::size_t k = kDefaultK;
  double tau = kDefaultTau;
  std::string decomposition;
  std::optional<std::string> encoder;
  std::optional<std::size_t> embed_dim;
  bool explain = false;
  bool json = false;
};

struct EvalArgs {
  std::string index;
  std::string queries;
  std::size_t k = kDefaultK;
  double tau = kDefaultTau;
  std::string decomposition;
  std::optional<std::string> encoder;
  std::optional<std::size_t> embed_dim;
  std::string baseline = "none";
  std::string corpus;
  double k1 = Bm25Params{}.k1;
  double b = Bm25Params{}.b;
  std::string out;
};

struct BenchArgs {
  std::string corpus;
  std::vector<std::string> labels;
  std::string gazetteer;
  std::vector<std::string> dimensions;
  std::string queries;
  std::vector<double> fractions{0.125, 0.25, 0.5, 1.0};
  std::size_t noise = 0;
  std::size_t reps = 5;
  std::string baseline = "bm25";
  double k1 = Bm25Params{}.k1;
  double b = Bm25Params{}.b;
  std::size_t k = kDefaultK;
  double tau = kDefaultTau;
  std::size_t embed_dim = TrigramEncoder::kDefaultDim;
  std::size_t threads = 1;
  std::string out;
};

struct InspectArgs {
  std::string index;
  std::string dim;
  std::string label;
  bool json = false;
};

std::uint64_t seed_from_env() {
  const char* s = std::getenv("HYPERRAG_SEED");
  if (s == nullptr || *s == '\0') return kDefaultSeed;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used);
    if (s[used] != '\0') throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("HYPERRAG_SEED must be an unsigned integer, got '") + s + "'");
  }
}

void write_output(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << data;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::kIoFailure, path, "cannot open for writing");
  f << data;
  if (!f) throw Error(ErrorCode::kIoFailure, path, "write failed");
}

std::string fmt_sim(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(3) << v;
  return s.str();
}

// Encoder for an index: the recorded one unless overridden; re-embeds the
// vocabulary when the effective encoder differs from the stored vectors.
std::unique_ptr<Encoder> encoder_for(HypercubeIndex& ix, const std::optional<std::string>& spec_flag,
                                     const std::optional<std::size_t>& dim_flag) {
  const auto& stored = ix.label_vectors();
  std::string spec = spec_flag.value_or(stored ? stored->encoder : "trigram");
  std::size_t dim = dim_flag.value_or(stored ? stored->dim : TrigramEncoder::kDefaultDim);
  std::set<std::string> keys;
  if (spec != "trigram") {
    for (const auto& d : ix.dimensions()) keys.insert(ix.vocab(d).begin(), ix.vocab(d).end());
  }
  auto enc = make_encoder(spec, dim, keys);
  if (!stored || stored->encoder != enc->spec() || stored->dim != enc->dim()) ix.embed(*enc);
  return enc;
}

LabelMap gather_labels(const Corpus& corpus, const std::vector<std::string>& label_files, const Gazetteer* gazetteer,
                       const DimensionSet& dims) {
  LabelMap labels;
  if (gazetteer != nullptr) labels = extract_all(corpus, *gazetteer);
  for (const auto& f : label_files) parse_precomputed_labels(read_file(f), corpus, dims, labels);
  return labels;
}

json component_json(const ComponentMatch& m) {
  json j;
  j["dim"] = m.component.dimension.name();
  j["text"] = m.component.text;
  j["key"] = m.component.key;
  j["source"] = m.component.source == ComponentSource::kVocabulary ? "vocabulary"
                : m.component.source == ComponentSource::kFallback ? "fallback"
                                                                   : "external";
  j["match"] = std::string(to_string(m.kind));
  j["label"] = m.label ? json(*m.label) : json(nullptr);
  j["sim"] = m.sim;
  return j;
}

json scored_json(const ScoredDoc& d, std::size_t rank_pos) {
  json j;
  j["rank"] = rank_pos;
  j["doc_id"] = d.doc_id;
  j["coverage"] = d.coverage;
  j["freq_score"] = d.freq_score;
  j["indicator_score"] = d.indicator_score;
  j["evidence"] = json::array();
  for (const auto& ev : d.evidence) {
    j["evidence"].push_back({{"dim", ev.dimension.name()},
                             {"component", ev.component},
                             {"matched_label", ev.matched_label ? json(*ev.matched_label) : json(nullptr)},
                             {"kind", std::string(to_string(ev.kind))},
                             {"sim", ev.sim},
                             {"count", ev.doc_count}});
  }
  return j;
}

// Grid in the shape "Doc | LOCATION | EVENT | THEME" with 'label': count cells.
void print_evidence_grid(const RetrievalResult& res, const HypercubeIndex& ix, std::ostream& out) {
  std::vector<Dimension> cols;
  for (const auto& dim : ix.dimensions()) {
    for (const auto& c : res.decomposition.components) {
      if (c.dimension == dim) {
        cols.push_back(dim);
        break;
      }
    }
  }
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> header{"Doc"};
  for (const auto& d : cols) header.push_back(d.name());
  table.push_back(header);
  for (const auto& doc : res.ranked) {
    std::vector<std::string> row{doc.doc_id};
    for (const auto& dim : cols) {
      std::string cell;
      for (const auto& ev : doc.evidence) {
        if (ev.dimension != dim || !ev.matched_label) continue;
        if (!cell.empty()) cell += ", ";
        cell += "'" + *ev.matched_label + "': " + std::to_string(ev.doc_count);
      }
      row.push_back(cell.empty() ? "--" : cell);
    }
    table.push_back(std::move(row));
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  for (const auto& row : table) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << " | ";
      const bool last = i + 1 == row.size();
      out << std::left << std::setw(last ? 0 : static_cast<int>(width[i])) << row[i];
    }
    out << '\n';
  }
}

int cmd_build(const BuildArgs& a, std::ostream& out) {
  if (a.labels.empty() && a.gazetteer.empty()) throw UsageError("build needs --labels and/or --gazetteer");
  const DimensionSet dims = DimensionSet::with_extensions(a.dimensions);
  const Corpus corpus = load_corpus(a.corpus);
  std::optional<Gazetteer> gazetteer;
  if (!a.gazetteer.empty()) gazetteer = load_gazetteer(a.gazetteer, dims);
  const LabelMap labels = gather_labels(corpus, a.labels, gazetteer ? &*gazetteer : nullptr, dims);
  HypercubeIndex ix = HypercubeIndex::build(corpus, labels, dims);
  std::set<std::string> keys;
  for (const auto& d : ix.dimensions()) keys.insert(ix.vocab(d).begin(), ix.vocab(d).end());
  const auto enc = make_encoder(a.encoder, a.embed_dim, a.encoder == "trigram" ? std::set<std::string>{} : keys);
  ix.embed(*enc);
  ix.save(a.out);

  if (a.json) {
    json j;
    j["index"] = a.out;
    j["documents"] = ix.doc_count();
    j["labels"] = ix.label_count();
    j["encoder"] = {{"spec", enc->spec()}, {"dim", enc->dim()}};
    j["vocab"] = json::object();
    for (const auto& d : ix.dimensions()) j["vocab"][d.name()] = ix.vocab(d).size();
    out << j.dump(2) << '\n';
  } else {
    out << "indexed " << ix.doc_count() << " documents, " << ix.label_count() << " labels -> " << a.out << '\n';
    for (const auto& d : ix.dimensions()) out << "  " << std::left << std::setw(14) << d.name() << ix.vocab(d).size() << '\n';
  }
  return kExitOk;
}

int cmd_query(const QueryArgs& a, std::ostream& out) {
  HypercubeIndex ix = HypercubeIndex::load(a.index);
  const auto enc = encoder_for(ix, a.encoder, a.embed_dim);
  std::optional<ExternalDecompositions> decomps;
  const std::vector<std::pair<Dimension, std::string>>* external = nullptr;
  if (!a.decomposition.empty()) {
    decomps = load_decompositions(a.decomposition, ix.dimension_set());
    external = decomps->find(a.query_id, a.query);
  }
  const RetrievalResult res = retrieve(a.query, ix, *enc, RetrievalOptions{a.tau, a.k}, external, a.query_id);
  const std::size_t l_q = res.decomposition.size();

  if (a.json) {
    json j;
    j["query"] = a.query;
    if (!a.query_id.empty()) j["query_id"] = a.query_id;
    j["tau"] = a.tau;
    j["k"] = a.k;
    j["full_coverage"] = res.full_coverage;
    j["components"] = json::array();
    for (const auto& m : res.matches) j["components"].push_back(component_json(m));
    j["results"] = json::array();
    for (std::size_t i = 0; i < res.ranked.size(); ++i) j["results"].push_back(scored_json(res.ranked[i], i + 1));
    out << j.dump(2) << '\n';
    return kExitOk;
  }

  out << "components (" << l_q << "):\n";
  for (const auto& m : res.matches) {
    out << "  " << std::left << std::setw(13) << m.component.dimension.name() << std::setw(28) << m.component.key
        << std::setw(10) << to_string(m.kind) << std::setw(24) << m.label.value_or("-") << fmt_sim(m.sim) << '\n';
  }
  out << "results (k=" << a.k << ", tau=" << fmt_sim(a.tau) << ", full coverage: " << (res.full_coverage ? "yes" : "no")
      << "):\n";
  out << "  " << std::left << std::setw(6) << "rank" << std::setw(16) << "doc_id" << std::setw(10) << "coverage"
      << std::setw(7) << "freq" << "indicator\n";
  for (std::size_t i = 0; i < res.ranked.size(); ++i) {
    const ScoredDoc& d = res.ranked[i];
    out << "  " << std::left << std::setw(6) << (i + 1) << std::setw(16) << d.doc_id << std::setw(10)
        << (std::to_string(d.coverage) + "/" + std::to_string(l_q)) << std::setw(7) << d.freq_score
        << d.indicator_score << '\n';
  }
  if (a.explain && !res.ranked.empty()) {
    out << "\nevidence:\n";
    print_evidence_grid(res, ix, out);
    for (const auto& d : res.ranked) {
      out << '\n' << d.doc_id << ":\n";
      for (const auto& ev : d.evidence) {
        out << "  " << std::left << std::setw(13) << ev.dimension.name() << std::setw(28) << ev.component
            << std::setw(24) << ev.matched_label.value_or("-") << std::setw(10) << to_string(ev.kind) << "sim="
            << fmt_sim(ev.sim) << "  count=" << ev.doc_count << '\n';
      }
    }
  }
  return kExitOk;
}

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  if (a.baseline == "bm25" && a.corpus.empty()) throw UsageError("--baseline bm25 needs --corpus");
  HypercubeIndex ix = HypercubeIndex::load(a.index);
  const auto enc = encoder_for(ix, a.encoder, a.embed_dim);
  const std::vector<QueryRecord> queries = load_queries(a.queries);
  std::optional<ExternalDecompositions> decomps;
  if (!a.decomposition.empty()) decomps = load_decompositions(a.decomposition, ix.dimension_set());
  const EvalReport report = eval_recall(ix, *enc, queries, a.k, a.tau, decomps ? &*decomps : nullptr);

  std::string data;
  if (a.baseline == "bm25") {
    const Bm25Index bm25 = Bm25Index::build(load_corpus(a.corpus), Bm25Params{a.k1, a.b});
    const EvalReport base = eval_bm25(bm25, queries, a.k);
    data = "{\n\"hypercube\": " + to_json(report) + ",\n\"bm25\": " + to_json(base) + "\n}\n";
    // Re-indent through the parser so the document is uniform.
    data = json::parse(data).dump(2) + "\n";
  } else {
    data = to_json(report) + "\n";
  }
  write_output(a.out, data, out);
  if (!a.out.empty() && a.out != "-") {
    out << std::fixed << std::setprecision(4) << "queries=" << report.rows.size() << " recall@1=" << report.recall_at_1
        << " recall@3=" << report.recall_at_3 << " recall@5=" << report.recall_at_5 << " mrr=" << report.mrr << '\n';
  }
  return kExitOk;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  if (a.labels.empty() && a.gazetteer.empty()) throw UsageError("bench needs --labels and/or --gazetteer");
  const DimensionSet dims = DimensionSet::with_extensions(a.dimensions);
  const Corpus corpus = load_corpus(a.corpus);
  std::optional<Gazetteer> gazetteer;
  if (!a.gazetteer.empty()) gazetteer = load_gazetteer(a.gazetteer, dims);
  const LabelMap labels = gather_labels(corpus, a.labels, gazetteer ? &*gazetteer : nullptr, dims);
  const std::vector<QueryRecord> queries = load_queries(a.queries);

  BenchConfig cfg;
  cfg.fractions = a.fractions;
  cfg.noise = a.noise;
  cfg.reps = a.reps;
  cfg.seed = seed_from_env();
  cfg.tau = a.tau;
  cfg.k = a.k;
  cfg.bm25 = Bm25Params{a.k1, a.b};
  cfg.embed_dim = a.embed_dim;
  cfg.bm25_baseline = a.baseline == "bm25";
  cfg.threads = a.threads;
  const auto rows = bench_latency(corpus, labels, gazetteer ? &*gazetteer : nullptr, queries, cfg);
  write_output(a.out, bench_csv(rows), out);
  return kExitOk;
}

int cmd_inspect(const InspectArgs& a, std::ostream& out) {
  const HypercubeIndex ix = HypercubeIndex::load(a.index);
  if (!a.label.empty() && a.dim.empty()) throw UsageError("--label needs --dim");
  if (!a.dim.empty()) {
    const Dimension dim = ix.dimension_set().parse(a.dim);
    if (!a.label.empty()) {
      const std::string key = normalize_label(a.label);
      const PostingList& postings = ix.lookup(dim, key);
      if (a.json) {
        json j = json::array();
        for (const auto& p : postings) j.push_back({{"doc_id", p.doc_id}, {"count", p.count}});
        out << j.dump() << '\n';
      } else {
        out << '[';
        for (std::size_t i = 0; i < postings.size(); ++i) {
          if (i > 0) out << ',';
          out << '(' << postings[i].doc_id << ',' << postings[i].count << ')';
        }
        out << "]\n";
      }
      return kExitOk;
    }
    if (a.json) {
      json j = json::object();
      for (const auto& key : ix.vocab(dim)) j[key] = ix.lookup(dim, key).size();
      out << j.dump(2) << '\n';
    } else {
      for (const auto& key : ix.vocab(dim)) out << key << '\t' << ix.lookup(dim, key).size() << '\n';
    }
    return kExitOk;
  }
  json j;
  j["documents"] = ix.doc_count();
  j["labels"] = ix.label_count();
  j["format_version"] = HypercubeIndex::kFormatVersion;
  if (const auto& v = ix.label_vectors()) {
    j["encoder"] = {{"spec", v->encoder}, {"dim", v->dim}};
  } else {
    j["encoder"] = nullptr;
  }
  j["vocab"] = json::object();
  for (const auto& d : ix.dimensions()) j["vocab"][d.name()] = ix.vocab(d).size();
  if (a.json) {
    out << j.dump(2) << '\n';
  } else {
    out << "documents " << ix.doc_count() << "\nlabels    " << ix.label_count() << '\n';
    if (const auto& v = ix.label_vectors()) out << "encoder   " << v->encoder << " (dim " << v->dim << ")\n";
    for (const auto& d : ix.dimensions()) out << "  " << std::left << std::setw(14) << d.name() << ix.vocab(d).size() << '\n';
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hypercube retrieval engine", "hyperrag"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* b = app.add_subcommand("build", "Index a corpus into a hypercube");
  b->add_option("--corpus", build.corpus, "Corpus file (JSONL: id, title, text)")->required()->check(CLI::ExistingFile);
  b->add_option("--labels", build.labels, "Precomputed labels file(s) (JSONL: doc_id, dim, label, count)")
      ->check(CLI::ExistingFile);
  b->add_option("--gazetteer", build.gazetteer, "Gazetteer file (JSONL: dim, phrase)")->check(CLI::ExistingFile);
  b->add_option("--dimensions", build.dimensions, "Extension dimension names")->delimiter(',');
  b->add_option("--encoder", build.encoder, "trigram | file:<path>")->capture_default_str();
  b->add_option("--embed-dim", build.embed_dim, "Trigram encoder dimension")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  b->add_option("--out", build.out, "Index output path")->required();
  b->add_flag("--json", build.json, "Machine-readable summary");

  QueryArgs query;
  auto* q = app.add_subcommand("query", "Retrieve documents for one query");
  q->add_option("--index", query.index, "Index file")->required()->check(CLI::ExistingFile);
  q->add_option("--query", query.query, "Query text")->required();
  q->add_option("--query-id", query.query_id, "Query id (selects an external decomposition)");
  q->add_option("--k", query.k, "Number of documents")->capture_default_str()->check(CLI::PositiveNumber);
  q->add_option("--tau", query.tau, "Semantic match threshold")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  q->add_option("--decomposition", query.decomposition, "External decompositions (JSONL)")->check(CLI::ExistingFile);
  q->add_option("--encoder", query.encoder, "Override encoder: trigram | file:<path>");
  q->add_option("--embed-dim", query.embed_dim, "Override trigram dimension")->check(CLI::PositiveNumber);
  q->add_flag("--explain", query.explain, "Print per-document evidence");
  q->add_flag("--json", query.json, "JSON output");

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "Recall@k / MRR against gold documents");
  e->add_option("--index", eval.index, "Index file")->required()->check(CLI::ExistingFile);
  e->add_option("--queries", eval.queries, "Query file with gold_doc_ids")->required()->check(CLI::ExistingFile);
  e->add_option("--k", eval.k, "Cutoff")->capture_default_str()->check(CLI::PositiveNumber);
  e->add_option("--tau", eval.tau, "Semantic match threshold")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  e->add_option("--decomposition", eval.decomposition, "External decompositions (JSONL)")->check(CLI::ExistingFile);
  e->add_option("--encoder", eval.encoder, "Override encoder");
  e->add_option("--embed-dim", eval.embed_dim, "Override trigram dimension")->check(CLI::PositiveNumber);
  e->add_option("--baseline", eval.baseline, "none | bm25")
      ->capture_default_str()
      ->check(CLI::IsMember({"none", "bm25"}));
  e->add_option("--corpus", eval.corpus, "Corpus for the BM25 baseline")->check(CLI::ExistingFile);
  e->add_option("--k1", eval.k1, "BM25 k1")->capture_default_str()->check(CLI::NonNegativeNumber);
  e->add_option("--b", eval.b, "BM25 b")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  e->add_option("--out", eval.out, "Report path (default: stdout)");

  BenchArgs bench;
  auto* be = app.add_subcommand("bench", "Retrieval latency vs corpus size");
  be->add_option("--corpus", bench.corpus, "Corpus file")->required()->check(CLI::ExistingFile);
  be->add_option("--labels", bench.labels, "Precomputed labels file(s)")->check(CLI::ExistingFile);
  be->add_option("--gazetteer", bench.gazetteer, "Gazetteer file")->check(CLI::ExistingFile);
  be->add_option("--dimensions", bench.dimensions, "Extension dimension names")->delimiter(',');
  be->add_option("--queries", bench.queries, "Query file")->required()->check(CLI::ExistingFile);
  be->add_option("--fractions", bench.fractions, "Corpus fractions in (0,1]")
      ->delimiter(',')
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  be->add_option("--noise", bench.noise, "Injected off-topic documents")->capture_default_str();
  be->add_option("--reps", bench.reps, "Timed repetitions (>= 5)")
      ->capture_default_str()
      ->check(CLI::Range(std::size_t{5}, std::size_t{1000000}));
  be->add_option("--baseline", bench.baseline, "bm25 | none")
      ->capture_default_str()
      ->check(CLI::IsMember({"none", "bm25"}));
  be->add_option("--k1", bench.k1, "BM25 k1")->capture_default_str()->check(CLI::NonNegativeNumber);
  be->add_option("--b", bench.b, "BM25 b")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  be->add_option("--k", bench.k, "Documents per query")->capture_default_str()->check(CLI::PositiveNumber);
  be->add_option("--tau", bench.tau, "Semantic match threshold")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  be->add_option("--embed-dim", bench.embed_dim, "Trigram encoder dimension")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  be->add_option("--threads", bench.threads, "Parallel query threads (throughput mode)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  be->add_option("--out", bench.out, "CSV path (default: stdout)");

  InspectArgs inspect;
  auto* in = app.add_subcommand("inspect", "Show index contents");
  in->add_option("--index", inspect.index, "Index file")->required()->check(CLI::ExistingFile);
  in->add_option("--dim", inspect.dim, "Dimension");
  in->add_option("--label", inspect.label, "Label (with --dim): print its posting list");
  in->add_flag("--json", inspect.json, "JSON output");

  std::vector<const char*> argv;
  argv.push_back("hyperrag");
  for (const auto& s : args) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (auto* sub : app.get_subcommands()) target = sub;
    out << target->help();
    return kExitOk;
  } catch (const CLI::ParseError& pe) {
    err << "error: " << pe.what() << "\n\n";
    const CLI::App* target = &app;
    for (auto* sub : app.get_subcommands()) target = sub;
    err << target->help();
    return kExitUsage;
  }

  try {
    if (b->parsed()) return cmd_build(build, out);
    if (q->parsed()) return cmd_query(query, out);
    if (e->parsed()) return cmd_eval(eval, out);
    if (be->parsed()) return cmd_bench(bench, out);
    if (in->parsed()) return cmd_inspect(inspect, out);
  } catch (const UsageError& ue) {
    err << "error: " << ue.what() << '\n';
    return kExitUsage;
  } catch (const Error& de) {
    err << "error: " << de.what() << '\n';
    return de.code() == ErrorCode::kInvalidArgument ? kExitUsage : kExitData;
  } catch (const std::exception& ex) {
    err << "internal error: " << ex.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace hyperrag::cli
