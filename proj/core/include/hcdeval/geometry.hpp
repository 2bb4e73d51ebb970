#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hcdeval/embedstore.hpp"

namespace hcdeval::geometry {

/// Row-major dense matrix; one row per point.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static Matrix from_embeddings(const embed::EmbeddingMatrix& m);
};

struct PcaResult {
  std::size_t n_components = 0;  // components actually returned
  std::vector<double> mean;      // dim
  Matrix components;             // n_components x dim, unit rows
  std::vector<double> explained_variance;
  Matrix scores;  // n_points x n_components
  bool rank_deficient = false;
  std::string warning;
};

/// Principal components of the mean-centred rows, by eigendecomposition of
/// the sample covariance. Components come in decreasing eigenvalue order and
/// each is signed so its largest-magnitude loading is positive. When fewer
/// than n_components eigenvalues are non-zero, the available ones are
/// returned with rank_deficient set. Throws InvalidArgument unless
/// rows > n_components >= 1 and n_components <= cols; RankDeficient when the
/// data has no variance at all.
PcaResult pca_reduce(const Matrix& data, std::size_t n_components);

enum class LabelLevel { Fine, Coarse };
std::string_view to_string(LabelLevel l) noexcept;
std::optional<LabelLevel> parse_label_level(std::string_view s);

struct PurityResult {
  std::string source_id;
  LabelLevel level = LabelLevel::Fine;
  double k_fraction = 0.0;
  double purity = 0.0;
  std::size_t n_points = 0;
  std::vector<std::pair<std::string, std::size_t>> k_by_class;  // sorted by label
};

/// max(1, round-half-up(k_fraction * class_size)), capped at n_points - 1.
std::size_t neighbours_for_class(double k_fraction, std::size_t class_size, std::size_t n_points);

struct PurityInput {
  const Matrix* points = nullptr;
  std::span<const std::string> labels;
  std::span<const std::string> ids;  // tie-break key, must be unique
  std::string source_id;
  LabelLevel level = LabelLevel::Fine;
};

/// Mean over points of the fraction of each point's k nearest neighbours
/// (cosine distance, self excluded, ties broken by ascending id) sharing its
/// label. Throws SingletonClass, ZeroVector, InvalidArgument.
PurityResult knn_purity(const PurityInput& input, double k_fraction, unsigned threads = 1);

/// knn_purity at each fraction, sharing one neighbour ranking per point.
std::vector<PurityResult> k_sweep(const PurityInput& input, std::span<const double> fractions,
                                  unsigned threads = 1);

/// (H - M) at the coarse level minus (H - M) at the fine level.
constexpr double divergence_delta(double human_fine, double human_coarse, double model_fine,
                                  double model_coarse) noexcept {
  return (human_coarse - model_coarse) - (human_fine - model_fine);
}

struct Projection {
  std::string record_id;
  double x = 0.0;
  double y = 0.0;
};

/// First two sign-fixed principal coordinates. A missing second component
/// (rank-1 data) is reported as 0. Throws InvalidArgument for fewer than 3
/// points and RankDeficient when every point coincides.
std::vector<Projection> project_2d(const Matrix& data, std::span<const std::string> ids);

}  // namespace hcdeval::geometry
