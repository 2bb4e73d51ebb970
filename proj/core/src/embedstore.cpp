#include "hcdeval/embedstore.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "hcdeval/error.hpp"

namespace hcdeval::embed {

namespace {

constexpr char kMagic[4] = {'E', 'M', 'B', '1'};

template <class T>
T from_le(const unsigned char* p) {
  using U = std::conditional_t<sizeof(T) == 2, std::uint16_t,
                               std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>>;
  U v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<U>(p[i]) << (8 * i);
  return std::bit_cast<T>(v);
}

template <class T>
void put_le(std::ostream& out, T value) {
  using U = std::conditional_t<sizeof(T) == 2, std::uint16_t,
                               std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>>;
  const U v = std::bit_cast<U>(value);
  unsigned char buf[sizeof(T)];
  for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

void read_exact(std::istream& in, void* dst, std::size_t n, const char* what) {
  in.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n)
    throw Error(Errc::TruncatedFile, std::string("unexpected end of file reading ") + what);
}

}  // namespace

EmbeddingMatrix::EmbeddingMatrix(std::string embedder_id, std::size_t dim)
    : embedder_id_(std::move(embedder_id)), dim_(dim) {
  if (dim_ == 0) throw Error(Errc::DimMismatch, "embedding dimension must be positive");
}

void EmbeddingMatrix::append(std::string record_id, std::span<const double> values) {
  if (values.size() != dim_)
    throw Error(Errc::DimMismatch, "expected " + std::to_string(dim_) + " components, got " +
                                       std::to_string(values.size()) + " for '" + record_id + "'");
  for (double x : values)
    if (!std::isfinite(x)) throw Error(Errc::NonFiniteValue, record_id);
  if (!index_.emplace(record_id, ids_.size()).second)
    throw Error(Errc::DuplicateRecordId, record_id);
  ids_.push_back(std::move(record_id));
  values_.insert(values_.end(), values.begin(), values.end());
}

std::optional<std::size_t> EmbeddingMatrix::find(std::string_view record_id) const {
  auto it = index_.find(std::string(record_id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

EmbeddingMatrix read_embeddings(std::istream& in, std::string embedder_id) {
  char magic[4];
  in.read(magic, 4);
  if (in.gcount() != 4 || std::memcmp(magic, kMagic, 4) != 0)
    throw Error(Errc::BadMagic, "not an EMB1 file");

  unsigned char header[12];
  read_exact(in, header, sizeof header, "header");
  const auto dim = from_le<std::uint32_t>(header);
  const auto count = from_le<std::uint64_t>(header + 4);

  EmbeddingMatrix m(std::move(embedder_id), dim);
  std::vector<unsigned char> raw(std::size_t{dim} * 4);
  std::vector<double> values(dim);
  for (std::uint64_t r = 0; r < count; ++r) {
    unsigned char len_buf[2];
    read_exact(in, len_buf, 2, "record id length");
    const auto len = from_le<std::uint16_t>(len_buf);
    std::string id(len, '\0');
    read_exact(in, id.data(), len, "record id");
    read_exact(in, raw.data(), raw.size(), "vector");
    for (std::size_t k = 0; k < dim; ++k)
      values[k] = static_cast<double>(from_le<float>(raw.data() + 4 * k));
    m.append(std::move(id), values);
  }
  if (in.peek() != std::char_traits<char>::eof())
    throw Error(Errc::DimMismatch, "trailing bytes after " + std::to_string(count) +
                                       " records; header dim/count disagree with body");
  return m;
}

EmbeddingMatrix load_embeddings(const std::string& path, std::string embedder_id) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open embeddings '" + path + "'");
  return read_embeddings(in, std::move(embedder_id));
}

void write_embeddings(std::ostream& out, const EmbeddingMatrix& m) {
  out.write(kMagic, 4);
  put_le(out, static_cast<std::uint32_t>(m.dim()));
  put_le(out, static_cast<std::uint64_t>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto& id = m.id(i);
    if (id.size() > std::numeric_limits<std::uint16_t>::max())
      throw Error(Errc::InvalidArgument, "record id longer than 65535 bytes");
    put_le(out, static_cast<std::uint16_t>(id.size()));
    out.write(id.data(), static_cast<std::streamsize>(id.size()));
    for (double x : m.row(i)) put_le(out, static_cast<float>(x));
  }
}

void save_embeddings(const std::string& path, const EmbeddingMatrix& m) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot write embeddings '" + path + "'");
  write_embeddings(out, m);
}

double dot(std::span<const double> u, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

double l2_norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

Vector normalized(std::span<const double> v, std::string_view label) {
  const double n = l2_norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(Errc::ZeroVector, std::string(label));
  Vector out(v.begin(), v.end());
  for (double& x : out) x /= n;
  return out;
}

EmbeddingMatrix normalize(const EmbeddingMatrix& m) {
  EmbeddingMatrix out(m.embedder_id(), m.dim());
  for (std::size_t i = 0; i < m.size(); ++i) out.append(m.id(i), normalized(m.row(i), m.id(i)));
  return out;
}

double cosine_distance(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size())
    throw Error(Errc::DimMismatch, std::to_string(u.size()) + " vs " + std::to_string(v.size()));
  if (std::abs(l2_norm(u) - 1.0) > kUnitNormTolerance ||
      std::abs(l2_norm(v) - 1.0) > kUnitNormTolerance)
    throw Error(Errc::NormViolation, "cosine_distance expects unit vectors");
  return cosine_distance_unchecked(u, v);
}

std::vector<std::string> unresolved_ids(const EmbeddingMatrix& m,
                                        std::span<const corpus::DescriptionRecord> records) {
  std::unordered_set<std::string_view> known;
  known.reserve(records.size());
  for (const auto& r : records) known.insert(r.record_id);
  std::vector<std::string> missing;
  for (const auto& id : m.ids())
    if (!known.contains(id)) missing.push_back(id);
  return missing;
}

WordVectorTable read_word_vectors(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::EmptyVocabulary, "empty word-vector file");
  std::istringstream header(line);
  long long count = -1;
  long long dim = -1;
  if (!(header >> count >> dim) || count < 0 || dim <= 0)
    throw Error(Errc::DimMismatch, "bad word-vector header '" + line + "'");
  if (count == 0) throw Error(Errc::EmptyVocabulary, "word-vector table has no entries");

  WordVectorTable table;
  table.dim = static_cast<std::size_t>(dim);
  table.vocab.reserve(static_cast<std::size_t>(count));
  for (long long r = 0; r < count; ++r) {
    if (!std::getline(in, line))
      throw Error(Errc::TruncatedFile, "expected " + std::to_string(count) + " vectors, got " +
                                           std::to_string(r));
    std::istringstream row(line);
    std::string token;
    row >> token;
    Vector v;
    v.reserve(table.dim);
    std::string field;
    while (row >> field) {
      char* end = nullptr;
      const double x = std::strtod(field.c_str(), &end);
      if (end == field.c_str() || *end != '\0')
        throw Error(Errc::InvalidField, "bad number '" + field + "' for token '" + token + "'");
      if (!std::isfinite(x)) throw Error(Errc::NonFiniteValue, token);
      v.push_back(x);
    }
    if (v.size() != table.dim)
      throw Error(Errc::DimMismatch, "token '" + token + "': expected " +
                                         std::to_string(table.dim) + ", got " +
                                         std::to_string(v.size()));
    table.vocab.insert_or_assign(std::move(token), std::move(v));
  }
  return table;
}

WordVectorTable load_word_vectors(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open word vectors '" + path + "'");
  return read_word_vectors(in);
}

}  // namespace hcdeval::embed
