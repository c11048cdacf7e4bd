#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hyperrag/labeling.hpp"

namespace hyperrag {

class HypercubeIndex;

/// Unit-length embedding. An all-zero vector marks "no embedding".
struct Vector {
  std::vector<double> values;

  std::size_t dim() const noexcept { return values.size(); }
  bool is_zero() const noexcept;
  double norm() const noexcept;

  friend bool operator==(const Vector&, const Vector&) = default;
};

/// Scales `v` to unit L2 norm in place; returns false if `v` is zero or
/// non-finite.
bool normalize_in_place(std::vector<double>& v);

/// Dot product clamped to [-1, 1]. Throws DimMismatch on length mismatch.
double cosine(std::span<const double> a, std::span<const double> b);
inline double cosine(const Vector& a, const Vector& b) { return cosine(a.values, b.values); }

/// Text -> unit vector. Implementations are pure: equal input, equal output.
class Encoder {
 public:
  virtual ~Encoder() = default;
  virtual std::size_t dim() const = 0;
  /// Identifies the encoder in persisted indexes, e.g. "trigram".
  virtual std::string spec() const = 0;
  /// Throws UnencodableText when no embedding exists for `text`.
  virtual Vector encode(std::string_view text) const = 0;
};

/// Deterministic character-trigram hashing encoder.
///
/// Each trigram of the normalized text lands in one of `dim` buckets with a
/// +1 or -1 sign taken from an independent hash; the sum is L2-normalized.
/// Texts shorter than three code points are unencodable.
class TrigramEncoder final : public Encoder {
 public:
  static constexpr std::size_t kDefaultDim = 256;

  explicit TrigramEncoder(std::size_t dim = kDefaultDim);

  std::size_t dim() const override { return dim_; }
  std::string spec() const override { return "trigram"; }
  Vector encode(std::string_view text) const override;

 private:
  std::size_t dim_;
};

/// Serves vectors produced offline, keyed by normalized text.
class PrecomputedEncoder final : public Encoder {
 public:
  PrecomputedEncoder(std::unordered_map<std::string, Vector> table, std::size_t dim, std::string spec);

  std::size_t dim() const override { return dim_; }
  std::string spec() const override { return spec_; }
  Vector encode(std::string_view text) const override;

 private:
  std::unordered_map<std::string, Vector> table_;
  std::size_t dim_;
  std::string spec_;
};

/// Reads `{key, dim, values}` records, normalizing keys and vectors.
/// Throws MissingKey for the first expected key without a vector and
/// DimMismatch when lengths disagree.
std::unordered_map<std::string, Vector> load_precomputed_vectors(const std::filesystem::path& path,
                                                                 const std::set<std::string>& expected_keys);
std::unordered_map<std::string, Vector> parse_precomputed_vectors(std::string_view content,
                                                                  const std::set<std::string>& expected_keys);

/// Builds an Encoder from a `--encoder` value: "trigram" or "file:<path>".
/// For file encoders every key in `expected_keys` must be covered.
std::unique_ptr<Encoder> make_encoder(const std::string& spec, std::size_t embed_dim,
                                      const std::set<std::string>& expected_keys = {});

/// Vectors for every vocabulary key, per dimension. Rows follow the order of
/// HypercubeIndex::vocab(dim); unencodable labels hold a zero row.
struct LabelVectors {
  std::string encoder;
  std::size_t dim = 0;
  std::map<Dimension, std::vector<double>> rows;

  std::span<const double> row(const Dimension& d, std::size_t i) const;

  friend bool operator==(const LabelVectors&, const LabelVectors&) = default;
};

LabelVectors embed_vocabulary(const HypercubeIndex& ix, const Encoder& enc);

struct Neighbor {
  std::string key;
  double sim = 0.0;

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Every label of `dim` whose cosine with `component` is at least `tau`,
/// sorted by similarity descending then key ascending. Exhaustive scan over
/// the dimension's stored label vectors.
std::vector<Neighbor> semantic_neighbors(std::string_view component, const Dimension& dim, const HypercubeIndex& ix,
                                         const Encoder& enc, double tau);

/// Same scan against a pre-encoded component vector.
std::vector<Neighbor> semantic_neighbors(const Vector& component, const Dimension& dim, const HypercubeIndex& ix,
                                         double tau);

void check_tau(double tau);

}  // namespace hyperrag
