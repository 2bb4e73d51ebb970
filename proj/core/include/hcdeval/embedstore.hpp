#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hcdeval/corpus.hpp"

namespace hcdeval::embed {

using Vector = std::vector<double>;

// Tolerance on |‖v‖ - 1| for inputs that must already be unit length.
inline constexpr double kUnitNormTolerance = 1e-6;

/// Dense per-record vectors from one embedder. Values are held in double so
/// that f32 inputs round-trip exactly and all accumulation happens in 64 bits.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::string embedder_id, std::size_t dim);

  /// Throws DimMismatch, NonFiniteValue, or DuplicateRecordId.
  void append(std::string record_id, std::span<const double> values);

  const std::string& embedder_id() const noexcept { return embedder_id_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }

  const std::string& id(std::size_t i) const { return ids_[i]; }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }
  std::optional<std::size_t> find(std::string_view record_id) const;

 private:
  std::string embedder_id_;
  std::size_t dim_ = 0;
  std::vector<std::string> ids_;
  std::vector<double> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

// EMB1: "EMB1", u32 dim, u64 count, then per record u16 id length, id bytes,
// dim f32 values. All integers and floats little-endian.
EmbeddingMatrix read_embeddings(std::istream& in, std::string embedder_id);
EmbeddingMatrix load_embeddings(const std::string& path, std::string embedder_id);
void write_embeddings(std::ostream& out, const EmbeddingMatrix& m);
void save_embeddings(const std::string& path, const EmbeddingMatrix& m);

double dot(std::span<const double> u, std::span<const double> v);
double l2_norm(std::span<const double> v);

/// Unit-length copy of v. Throws ZeroVector (tagged with `label`) on a zero
/// or non-finite norm.
Vector normalized(std::span<const double> v, std::string_view label = {});

/// Row-wise L2 normalisation. Throws ZeroVector(record_id).
EmbeddingMatrix normalize(const EmbeddingMatrix& m);

/// 1 - u·v for unit vectors. Throws NormViolation when either input is not
/// unit length within kUnitNormTolerance.
double cosine_distance(std::span<const double> u, std::span<const double> v);

/// Same quantity without the norm check, for inner loops over vectors that
/// were normalised upstream.
inline double cosine_distance_unchecked(std::span<const double> u, std::span<const double> v) {
  return 1.0 - dot(u, v);
}

/// Record ids in the matrix that do not resolve to any corpus record.
std::vector<std::string> unresolved_ids(const EmbeddingMatrix& m,
                                        std::span<const corpus::DescriptionRecord> records);

struct WordVectorTable {
  std::size_t dim = 0;
  std::unordered_map<std::string, Vector> vocab;

  const Vector* find(const std::string& token) const {
    auto it = vocab.find(token);
    return it == vocab.end() ? nullptr : &it->second;
  }
};

/// Text format: header "<count> <dim>", then "<token> v1 ... vdim" per line.
WordVectorTable read_word_vectors(std::istream& in);
WordVectorTable load_word_vectors(const std::string& path);

}  // namespace hcdeval::embed
