#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hcdeval/corpus.hpp"
#include "hcdeval/embedstore.hpp"

namespace hcdeval::calib {

using embed::Vector;

/// How d_HM pools model-to-human distances.
enum class DhmMode {
  Centroid,  // median over model vectors of the distance to the human centroid
  Pairwise,  // median over every human x model pair
};
/// How the leave-one-out distances are reduced to the lower bound.
enum class LbMode { Median, Mean };
/// Whether each image gets its own upper bound or one bound is pooled over
/// every image of the (task, embedder) cell.
enum class UbScope { PerImage, Global };

enum class Classification { Generic, InRange, Catastrophic };

std::string_view to_string(DhmMode m) noexcept;
std::string_view to_string(LbMode m) noexcept;
std::string_view to_string(UbScope s) noexcept;
std::string_view to_string(Classification c) noexcept;
std::optional<DhmMode> parse_dhm_mode(std::string_view s);
std::optional<LbMode> parse_lb_mode(std::string_view s);
std::optional<UbScope> parse_ub_scope(std::string_view s);

// Cells whose ub - lb falls below this are rejected as degenerate.
inline constexpr double kMinBoundsSpread = 1e-9;
// Means with a smaller norm have no usable direction.
inline constexpr double kMinMeanNorm = 1e-9;

struct GroupKey {
  std::string image_id;
  std::string task;
  std::string embedder_id;
  std::optional<std::string> model_name;
  std::optional<std::string> prompt_type;

  auto operator<=>(const GroupKey&) const = default;
  bool operator==(const GroupKey&) const = default;
};

struct CalibrationBounds {
  GroupKey group;  // image x task x embedder
  Vector centroid;
  double lb = 0.0;
  double ub = 0.0;
  std::size_t n_humans = 0;
};

struct HcdRecord {
  GroupKey group;
  std::size_t n_human = 0;
  std::size_t n_model = 0;
  double lb = 0.0;
  double ub = 0.0;
  double d_hm = 0.0;
  double hcd = 0.0;
  Classification classification = Classification::InRange;
};

Classification classify(double hcd) noexcept;

/// Unit-normalised arithmetic mean. Inputs must be unit vectors.
/// Throws EmptyInput, NormViolation, DegenerateMean.
Vector human_centroid(std::span<const Vector> humans);

/// Leave-one-out distances: for each human, the cosine distance to the
/// centroid of all the others. Throws TooFewHumans, DegenerateMean.
std::vector<double> loo_distances(std::span<const Vector> humans);
double lower_bound(std::span<const Vector> humans, LbMode mode = LbMode::Median);

/// Every distance between a target-image human vector and another image's
/// centroid.
std::vector<double> cross_image_distances(std::span<const Vector> target_humans,
                                          std::span<const Vector> other_centroids);
/// 95th percentile (type 7) of cross_image_distances. Throws NoOtherImages.
double upper_bound(std::span<const Vector> target_humans, std::span<const Vector> other_centroids);

inline constexpr double kUpperBoundPercentile = 0.95;

/// d_HM and HCD for one model cell. `humans` is only consulted in pairwise
/// mode. Throws NoModelVectors, DegenerateBounds.
HcdRecord compute_hcd(std::span<const Vector> model_vectors, const CalibrationBounds& bounds,
                      DhmMode mode = DhmMode::Centroid, std::span<const Vector> humans = {});

struct FailureRate {
  std::vector<std::string> group;
  std::size_t n = 0;
  double generic_rate = 0.0;
  double catastrophic_rate = 0.0;
};

/// Accepted group_by fields: image_id, task, task_group, embedder_id,
/// model_name, prompt_type. Throws EmptyInput, UnknownField.
std::vector<FailureRate> failure_rates(std::span<const HcdRecord> records,
                                       std::span<const std::string> group_by);

struct HcdOptions {
  DhmMode dhm_mode = DhmMode::Centroid;
  LbMode lb_mode = LbMode::Median;
  UbScope ub_scope = UbScope::PerImage;
  unsigned threads = 1;
};

struct ExcludedCell {
  GroupKey group;
  std::string reason;
};

struct HcdRun {
  std::vector<CalibrationBounds> bounds;  // sorted by group
  std::vector<HcdRecord> records;         // sorted by group
  std::vector<ExcludedCell> excluded;     // sorted by group
};

/// Full pipeline over a corpus and one raw (un-normalised) matrix per
/// embedder: bounds per (image, task, embedder), then one HcdRecord per
/// (image, task, embedder, model_name, prompt_type). Every record used must
/// have a vector in every matrix (MissingEmbedding otherwise); matrix ids
/// must resolve to corpus records (UnknownRecordId otherwise). Output is
/// independent of options.threads.
HcdRun evaluate(std::span<const corpus::DescriptionRecord> records,
                std::span<const embed::EmbeddingMatrix> embeddings, const HcdOptions& options);

}  // namespace hcdeval::calib
