// Single-file index container:
//
//   "HCUBEIDX" | u32 header_len | header JSON
//   | docs section | one section per dimension | [one vector section per dimension]
//   | u32 CRC-32 of everything before it
//
// Integers are little-endian; sections carry a u64 byte length. Keys are
// written in sorted order and postings by doc_id, so equal indexes produce
// identical bytes.

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>

#include "hyperrag/error.hpp"
#include "hyperrag/hypercube.hpp"

namespace hyperrag {
namespace {

constexpr std::string_view kMagic = "HCUBEIDX";

class Writer {
 public:
  void bytes(std::string_view s) { out_.append(s); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void f64(double d) { u64(std::bit_cast<std::uint64_t>(d)); }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.append(s);
  }
  // Starts a length-prefixed section; returns the offset to patch.
  std::size_t open_section() {
    const std::size_t at = out_.size();
    u64(0);
    return at;
  }
  void close_section(std::size_t at) {
    const std::uint64_t len = out_.size() - at - 8;
    for (int i = 0; i < 8; ++i) out_[at + i] = static_cast<char>((len >> (8 * i)) & 0xFF);
  }
  std::string& data() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  std::string_view bytes(std::size_t n) {
    need(n);
    std::string_view s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<unsigned char>(in_[pos_ + i])) << (8 * i);
    pos_ += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in_[pos_ + i])) << (8 * i);
    pos_ += 8;
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() { return std::string(bytes(u32())); }
  bool done() const { return pos_ == in_.size(); }
  std::size_t pos() const { return pos_; }

 private:
  void need(std::size_t n) const {
    if (n > in_.size() - pos_) throw Error(ErrorCode::kChecksumMismatch, "index", "section overruns file");
  }
  std::string_view in_;
  std::size_t pos_ = 0;
};

std::uint32_t crc_of(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed in chunks.
  std::size_t off = 0;
  while (off < bytes.size()) {
    const std::size_t n = std::min<std::size_t>(bytes.size() - off, 1u << 30);
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + off), static_cast<uInt>(n));
    off += n;
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

std::string HypercubeIndex::serialize() const {
  nlohmann::ordered_json header;
  header["format"] = "hypercube-index";
  header["version"] = kFormatVersion;
  header["dimensions"] = nlohmann::ordered_json::array();
  for (const auto& d : dims_.all()) header["dimensions"].push_back(d.name());
  header["doc_count"] = doc_ids_.size();
  header["label_count"] = label_count();
  if (vectors_) {
    header["encoder"] = {{"spec", vectors_->encoder}, {"dim", vectors_->dim}};
  } else {
    header["encoder"] = nullptr;
  }
  const std::string header_text = header.dump();

  Writer w;
  w.bytes(kMagic);
  w.str(header_text);

  const std::size_t docs = w.open_section();
  w.u32(static_cast<std::uint32_t>(doc_ids_.size()));
  for (const auto& id : doc_ids_) w.str(id);
  w.close_section(docs);

  for (const auto& dim : dims_.all()) {
    const DimensionTable& t = tables_.at(dim);
    const std::size_t sec = w.open_section();
    w.u32(static_cast<std::uint32_t>(t.vocab.size()));
    for (const auto& key : t.vocab) {
      const PostingList& postings = t.entries.at(key).postings;
      w.str(key);
      w.u32(static_cast<std::uint32_t>(postings.size()));
      for (const auto& p : postings) {
        w.str(p.doc_id);
        w.u32(p.count);
        const DocLabels& fwd = forward_.at(p.doc_id);
        auto s = fwd.surfaces.find(LabelRef{dim, key});
        if (s == fwd.surfaces.end()) {
          w.u32(0);
        } else {
          w.u32(static_cast<std::uint32_t>(s->second.size()));
          for (const auto& surface : s->second) w.str(surface);
        }
      }
    }
    w.close_section(sec);
  }

  if (vectors_) {
    for (const auto& dim : dims_.all()) {
      const std::size_t sec = w.open_section();
      for (double v : vectors_->rows.at(dim)) w.f64(v);
      w.close_section(sec);
    }
  }

  w.u32(crc_of(w.data()));
  return std::move(w.data());
}

HypercubeIndex HypercubeIndex::deserialize(std::string_view bytes) {
  if (bytes.size() < kMagic.size()) throw Error(ErrorCode::kChecksumMismatch, "index", "file too short");
  if (bytes.substr(0, kMagic.size()) != kMagic) {
    throw Error(ErrorCode::kFormatVersionMismatch, "index", "not a hypercube index file");
  }
  if (bytes.size() < kMagic.size() + 8) throw Error(ErrorCode::kChecksumMismatch, "index", "file too short");
  const std::string_view body = bytes.substr(0, bytes.size() - 4);
  Reader tail(bytes.substr(bytes.size() - 4));
  if (crc_of(body) != tail.u32()) throw Error(ErrorCode::kChecksumMismatch, "index");

  Reader r(body);
  r.bytes(kMagic.size());
  const nlohmann::json header = nlohmann::json::parse(r.str(), nullptr, false);
  if (header.is_discarded() || !header.is_object()) {
    throw Error(ErrorCode::kChecksumMismatch, "index", "unreadable header");
  }
  if (!header.contains("version") || !header["version"].is_number_unsigned() ||
      header["version"].get<std::uint32_t>() != kFormatVersion) {
    throw Error(ErrorCode::kFormatVersionMismatch, header.contains("version") ? header["version"].dump() : "none",
                "reader supports version " + std::to_string(kFormatVersion));
  }

  std::vector<std::string> canonical(kCanonicalDimensions.begin(), kCanonicalDimensions.end());
  std::vector<std::string> names = header.at("dimensions").get<std::vector<std::string>>();
  if (names.size() < canonical.size() || !std::equal(canonical.begin(), canonical.end(), names.begin())) {
    throw Error(ErrorCode::kFormatVersionMismatch, "dimensions", "canonical dimensions missing from header");
  }
  HypercubeIndex ix;
  ix.dims_ = DimensionSet::with_extensions(std::vector<std::string>(names.begin() + canonical.size(), names.end()));

  r.u64();
  const std::uint32_t n_docs = r.u32();
  ix.doc_ids_.reserve(n_docs);
  ix.forward_.reserve(n_docs);
  for (std::uint32_t i = 0; i < n_docs; ++i) {
    std::string id = r.str();
    DocLabels fwd;
    fwd.doc_id = id;
    if (!ix.forward_.emplace(id, std::move(fwd)).second) throw Error(ErrorCode::kDuplicateId, id);
    ix.doc_ids_.push_back(std::move(id));
  }

  for (const auto& dim : ix.dims_.all()) {
    DimensionTable& t = ix.tables_[dim];
    r.u64();
    const std::uint32_t n_keys = r.u32();
    for (std::uint32_t k = 0; k < n_keys; ++k) {
      std::string key = r.str();
      const std::uint32_t n_postings = r.u32();
      Entry& entry = t.entries[key];
      entry.postings.reserve(n_postings);
      for (std::uint32_t j = 0; j < n_postings; ++j) {
        Posting p{r.str(), r.u32()};
        auto f = ix.forward_.find(p.doc_id);
        if (f == ix.forward_.end()) throw Error(ErrorCode::kUnknownDocId, p.doc_id);
        LabelRef ref{dim, key};
        f->second.counts[ref] = p.count;
        const std::uint32_t n_surfaces = r.u32();
        for (std::uint32_t s = 0; s < n_surfaces; ++s) f->second.surfaces[ref].insert(r.str());
        entry.postings.push_back(std::move(p));
      }
    }
  }
  ix.finalize();

  if (const auto& enc = header["encoder"]; enc.is_object()) {
    LabelVectors vectors;
    vectors.encoder = enc.at("spec").get<std::string>();
    vectors.dim = enc.at("dim").get<std::size_t>();
    for (const auto& dim : ix.dims_.all()) {
      const std::uint64_t len = r.u64();
      if (len % 8 != 0) throw Error(ErrorCode::kChecksumMismatch, dim.name(), "vector section misaligned");
      auto& rows = vectors.rows[dim];
      rows.reserve(len / 8);
      for (std::uint64_t i = 0; i < len / 8; ++i) rows.push_back(r.f64());
    }
    ix.set_label_vectors(std::move(vectors));
  }
  if (!r.done()) throw Error(ErrorCode::kChecksumMismatch, "index", "trailing bytes");
  return ix;
}

void HypercubeIndex::save(const std::filesystem::path& path) const {
  const std::string bytes = serialize();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoFailure, path.string(), "cannot open for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoFailure, path.string(), "write failed");
}

HypercubeIndex HypercubeIndex::load(const std::filesystem::path& path) { return deserialize(read_file(path)); }

}  // namespace hyperrag
