#include "hyperrag/embedding.hpp"

#include <unicode/utf8.h>

#include <algorithm>
#include <cmath>

#include "hyperrag/error.hpp"
#include "hyperrag/hypercube.hpp"
#include "hyperrag/text.hpp"
#include "jsonl.hpp"

namespace hyperrag {
namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

std::uint64_t fnv1a(std::string_view s, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : s) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

// Byte offsets of each code point boundary.
std::vector<std::size_t> cp_boundaries(std::string_view s) {
  std::vector<std::size_t> out;
  const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
  const auto length = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < length) {
    out.push_back(static_cast<std::size_t>(i));
    U8_FWD_1(bytes, i, length);
  }
  out.push_back(s.size());
  return out;
}

}  // namespace

bool Vector::is_zero() const noexcept {
  return std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
}

double Vector::norm() const noexcept {
  double s = 0.0;
  for (double v : values) s += v * v;
  return std::sqrt(s);
}

bool normalize_in_place(std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) {
    if (!std::isfinite(x)) return false;
    s += x * x;
  }
  if (s == 0.0) return false;
  const double inv = 1.0 / std::sqrt(s);
  for (double& x : v) x *= inv;
  return true;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimMismatch, std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return std::clamp(dot, -1.0, 1.0);
}

void check_tau(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tau", "similarity threshold must lie in [0, 1]");
  }
}

TrigramEncoder::TrigramEncoder(std::size_t dim) : dim_(dim) {
  if (dim == 0) throw Error(ErrorCode::kInvalidArgument, "embed-dim", "must be positive");
}

Vector TrigramEncoder::encode(std::string_view text) const {
  const std::string norm = normalize_label(text);
  const std::vector<std::size_t> cps = cp_boundaries(norm);
  const std::size_t n_cp = cps.size() - 1;
  if (n_cp < 3) throw Error(ErrorCode::kUnencodableText, std::string(text), "fewer than 3 characters");
  Vector v;
  v.values.assign(dim_, 0.0);
  for (std::size_t i = 0; i + 3 <= n_cp; ++i) {
    const std::string_view tri = std::string_view(norm).substr(cps[i], cps[i + 3] - cps[i]);
    const std::uint64_t h = fnv1a(tri, kFnvOffset);
    const std::size_t bucket = static_cast<std::size_t>(h % dim_);
    const double sign = (mix(h) & 1U) != 0 ? 1.0 : -1.0;
    v.values[bucket] += sign;
  }
  if (!normalize_in_place(v.values)) {
    throw Error(ErrorCode::kUnencodableText, std::string(text), "trigram features cancel out");
  }
  return v;
}

PrecomputedEncoder::PrecomputedEncoder(std::unordered_map<std::string, Vector> table, std::size_t dim,
                                       std::string spec)
    : table_(std::move(table)), dim_(dim), spec_(std::move(spec)) {
  for (const auto& [key, v] : table_) {
    if (v.dim() != dim_) throw Error(ErrorCode::kDimMismatch, key);
  }
}

Vector PrecomputedEncoder::encode(std::string_view text) const {
  const std::string key = normalize_label(text);
  auto it = table_.find(key);
  if (it == table_.end()) throw Error(ErrorCode::kUnencodableText, std::string(text), "no precomputed vector");
  return it->second;
}

std::unordered_map<std::string, Vector> parse_precomputed_vectors(std::string_view content,
                                                                  const std::set<std::string>& expected_keys) {
  std::unordered_map<std::string, Vector> out;
  std::size_t common_dim = 0;
  detail::for_each_record(content, [&](const nlohmann::json& rec, std::size_t line_no) {
    const std::string key = normalize_label(detail::required_string(rec, "key", line_no));
    if (key.empty()) throw Error(ErrorCode::kMalformedRecord, std::to_string(line_no), "empty key");
    auto vals = rec.find("values");
    if (vals == rec.end() || !vals->is_array()) {
      throw Error(ErrorCode::kMissingField, std::to_string(line_no), "missing array field 'values'");
    }
    Vector v;
    v.values.reserve(vals->size());
    for (const auto& x : *vals) {
      if (!x.is_number()) throw Error(ErrorCode::kMalformedRecord, std::to_string(line_no), "non-numeric value");
      v.values.push_back(x.get<double>());
    }
    if (auto d = rec.find("dim"); d != rec.end()) {
      if (!d->is_number_unsigned() || d->get<std::size_t>() != v.values.size()) {
        throw Error(ErrorCode::kDimMismatch, key, "declared dim disagrees with values length");
      }
    }
    if (common_dim == 0) common_dim = v.values.size();
    if (v.values.size() != common_dim) {
      throw Error(ErrorCode::kDimMismatch, key,
                  "expected " + std::to_string(common_dim) + " values, got " + std::to_string(v.values.size()));
    }
    if (!normalize_in_place(v.values)) {
      throw Error(ErrorCode::kMalformedRecord, std::to_string(line_no), "zero or non-finite vector");
    }
    out[key] = std::move(v);
  });
  for (const auto& key : expected_keys) {
    if (!out.contains(key)) throw Error(ErrorCode::kMissingKey, key);
  }
  return out;
}

std::unordered_map<std::string, Vector> load_precomputed_vectors(const std::filesystem::path& path,
                                                                 const std::set<std::string>& expected_keys) {
  return parse_precomputed_vectors(read_file(path), expected_keys);
}

std::unique_ptr<Encoder> make_encoder(const std::string& spec, std::size_t embed_dim,
                                      const std::set<std::string>& expected_keys) {
  if (spec == "trigram") return std::make_unique<TrigramEncoder>(embed_dim);
  constexpr std::string_view kFilePrefix = "file:";
  if (spec.starts_with(kFilePrefix)) {
    auto table = load_precomputed_vectors(spec.substr(kFilePrefix.size()), expected_keys);
    const std::size_t dim = table.empty() ? embed_dim : table.begin()->second.dim();
    return std::make_unique<PrecomputedEncoder>(std::move(table), dim, spec);
  }
  throw Error(ErrorCode::kInvalidArgument, spec, "encoder must be 'trigram' or 'file:<path>'");
}

std::span<const double> LabelVectors::row(const Dimension& d, std::size_t i) const {
  const auto& r = rows.at(d);
  return std::span<const double>(r).subspan(i * dim, dim);
}

LabelVectors embed_vocabulary(const HypercubeIndex& ix, const Encoder& enc) {
  LabelVectors out;
  out.encoder = enc.spec();
  out.dim = enc.dim();
  for (const auto& dim : ix.dimensions()) {
    auto& rows = out.rows[dim];
    const auto& vocab = ix.vocab(dim);
    rows.assign(vocab.size() * out.dim, 0.0);
    for (std::size_t i = 0; i < vocab.size(); ++i) {
      Vector v;
      try {
        v = enc.encode(vocab[i]);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kUnencodableText) throw;
        continue;  // zero row: exact matching only
      }
      if (v.dim() != out.dim) throw Error(ErrorCode::kDimMismatch, vocab[i]);
      std::copy(v.values.begin(), v.values.end(), rows.begin() + static_cast<std::ptrdiff_t>(i * out.dim));
    }
  }
  return out;
}

std::vector<Neighbor> semantic_neighbors(const Vector& component, const Dimension& dim, const HypercubeIndex& ix,
                                         double tau) {
  check_tau(tau);
  const auto& vocab = ix.vocab(dim);
  std::vector<Neighbor> out;
  if (vocab.empty()) return out;
  const auto& vectors = ix.label_vectors();
  if (!vectors) throw Error(ErrorCode::kInvalidArgument, "index", "index has no label vectors");
  if (component.dim() != vectors->dim) {
    throw Error(ErrorCode::kDimMismatch, dim.name(),
                "component has " + std::to_string(component.dim()) + " dims, labels " + std::to_string(vectors->dim));
  }
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    const auto row = vectors->row(dim, i);
    if (std::all_of(row.begin(), row.end(), [](double x) { return x == 0.0; })) continue;
    const double sim = cosine(component.values, row);
    if (sim >= tau) out.push_back(Neighbor{vocab[i], sim});
  }
  std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
    if (a.sim != b.sim) return a.sim > b.sim;
    return a.key < b.key;
  });
  return out;
}

std::vector<Neighbor> semantic_neighbors(std::string_view component, const Dimension& dim, const HypercubeIndex& ix,
                                         const Encoder& enc, double tau) {
  check_tau(tau);
  const auto& vectors = ix.label_vectors();
  if (vectors && vectors->encoder != enc.spec()) {
    throw Error(ErrorCode::kInvalidArgument, enc.spec(), "index label vectors come from encoder " + vectors->encoder);
  }
  return semantic_neighbors(enc.encode(component), dim, ix, tau);
}

}  // namespace hyperrag
