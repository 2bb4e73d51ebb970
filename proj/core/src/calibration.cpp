#include "hcdeval/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "hcdeval/error.hpp"
#include "hcdeval/parallel.hpp"
#include "hcdeval/stats.hpp"

namespace hcdeval::calib {

namespace {

void require_unit(std::span<const Vector> vs, const char* what) {
  for (const auto& v : vs)
    if (std::abs(embed::l2_norm(v) - 1.0) > embed::kUnitNormTolerance)
      throw Error(Errc::NormViolation, std::string(what) + " must be unit vectors");
}

void require_same_dim(std::span<const Vector> vs, std::size_t dim) {
  for (const auto& v : vs)
    if (v.size() != dim)
      throw Error(Errc::DimMismatch,
                  "expected dimension " + std::to_string(dim) + ", got " + std::to_string(v.size()));
}

// Unit direction of `sum`, or DegenerateMean when the mean sum/count is ~0.
Vector unit_mean(Vector sum, std::size_t count) {
  const double norm = embed::l2_norm(sum);
  if (norm / static_cast<double>(count) < kMinMeanNorm)
    throw Error(Errc::DegenerateMean, "mean vector has near-zero norm");
  for (double& x : sum) x /= norm;
  return sum;
}

Vector vector_sum(std::span<const Vector> vs) {
  Vector sum(vs.front().size(), 0.0);
  for (const auto& v : vs)
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += v[k];
  return sum;
}

}  // namespace

std::string_view to_string(DhmMode m) noexcept {
  return m == DhmMode::Centroid ? "centroid" : "pairwise";
}
std::string_view to_string(LbMode m) noexcept { return m == LbMode::Median ? "median" : "mean"; }
std::string_view to_string(UbScope s) noexcept {
  return s == UbScope::PerImage ? "per-image" : "global";
}
std::string_view to_string(Classification c) noexcept {
  switch (c) {
    case Classification::Generic: return "generic";
    case Classification::InRange: return "in_range";
    case Classification::Catastrophic: return "catastrophic";
  }
  return "";
}

std::optional<DhmMode> parse_dhm_mode(std::string_view s) {
  if (s == "centroid") return DhmMode::Centroid;
  if (s == "pairwise") return DhmMode::Pairwise;
  return std::nullopt;
}
std::optional<LbMode> parse_lb_mode(std::string_view s) {
  if (s == "median") return LbMode::Median;
  if (s == "mean") return LbMode::Mean;
  return std::nullopt;
}
std::optional<UbScope> parse_ub_scope(std::string_view s) {
  if (s == "per-image") return UbScope::PerImage;
  if (s == "global") return UbScope::Global;
  return std::nullopt;
}

Classification classify(double hcd) noexcept {
  if (hcd < 0.0) return Classification::Generic;
  if (hcd > 1.0) return Classification::Catastrophic;
  return Classification::InRange;
}

Vector human_centroid(std::span<const Vector> humans) {
  if (humans.empty()) throw Error(Errc::EmptyInput, "no human vectors");
  require_same_dim(humans, humans.front().size());
  require_unit(humans, "human vectors");
  return unit_mean(vector_sum(humans), humans.size());
}

std::vector<double> loo_distances(std::span<const Vector> humans) {
  if (humans.size() < 2) throw Error(Errc::TooFewHumans, "leave-one-out needs at least 2 humans");
  require_same_dim(humans, humans.front().size());
  require_unit(humans, "human vectors");

  const Vector total = vector_sum(humans);
  std::vector<double> d;
  d.reserve(humans.size());
  for (const auto& held_out : humans) {
    Vector rest = total;
    for (std::size_t k = 0; k < rest.size(); ++k) rest[k] -= held_out[k];
    const Vector c = unit_mean(std::move(rest), humans.size() - 1);
    d.push_back(embed::cosine_distance_unchecked(held_out, c));
  }
  return d;
}

double lower_bound(std::span<const Vector> humans, LbMode mode) {
  const auto d = loo_distances(humans);
  return mode == LbMode::Median ? stats::median(d) : stats::mean(d);
}

std::vector<double> cross_image_distances(std::span<const Vector> target_humans,
                                          std::span<const Vector> other_centroids) {
  std::vector<double> d;
  d.reserve(target_humans.size() * other_centroids.size());
  for (const auto& h : target_humans)
    for (const auto& c : other_centroids) d.push_back(embed::cosine_distance_unchecked(h, c));
  return d;
}

double upper_bound(std::span<const Vector> target_humans, std::span<const Vector> other_centroids) {
  if (target_humans.empty()) throw Error(Errc::EmptyInput, "no human vectors for target image");
  if (other_centroids.empty()) throw Error(Errc::NoOtherImages, "no other-image centroids");
  const std::size_t dim = target_humans.front().size();
  require_same_dim(target_humans, dim);
  require_same_dim(other_centroids, dim);
  require_unit(target_humans, "human vectors");
  require_unit(other_centroids, "centroids");
  return stats::percentile(cross_image_distances(target_humans, other_centroids),
                           kUpperBoundPercentile);
}

HcdRecord compute_hcd(std::span<const Vector> model_vectors, const CalibrationBounds& bounds,
                      DhmMode mode, std::span<const Vector> humans) {
  if (model_vectors.empty()) throw Error(Errc::NoModelVectors, "no model vectors");
  if (!(bounds.ub - bounds.lb >= kMinBoundsSpread))
    throw Error(Errc::DegenerateBounds, "ub - lb below " + std::to_string(kMinBoundsSpread));
  require_same_dim(model_vectors, bounds.centroid.size());
  require_unit(model_vectors, "model vectors");

  std::vector<double> d;
  if (mode == DhmMode::Centroid) {
    d.reserve(model_vectors.size());
    for (const auto& m : model_vectors)
      d.push_back(embed::cosine_distance_unchecked(m, bounds.centroid));
  } else {
    if (humans.empty())
      throw Error(Errc::InvalidArgument, "pairwise d_HM requires the human vectors");
    require_same_dim(humans, bounds.centroid.size());
    require_unit(humans, "human vectors");
    d.reserve(model_vectors.size() * humans.size());
    for (const auto& h : humans)
      for (const auto& m : model_vectors) d.push_back(embed::cosine_distance_unchecked(m, h));
  }

  HcdRecord r;
  r.group = bounds.group;
  r.n_human = bounds.n_humans;
  r.n_model = model_vectors.size();
  r.lb = bounds.lb;
  r.ub = bounds.ub;
  r.d_hm = stats::median(d);
  r.hcd = (r.d_hm - r.lb) / (r.ub - r.lb);
  r.classification = classify(r.hcd);
  return r;
}

std::vector<FailureRate> failure_rates(std::span<const HcdRecord> records,
                                       std::span<const std::string> group_by) {
  if (records.empty()) throw Error(Errc::EmptyInput, "no HCD records");
  auto value = [](const HcdRecord& r, const std::string& f) -> std::string {
    if (f == "image_id") return r.group.image_id;
    if (f == "task") return r.group.task;
    if (f == "task_group") {
      auto t = corpus::lookup_task(r.group.task);
      return t ? std::string(corpus::to_string(t->second)) : std::string();
    }
    if (f == "embedder_id") return r.group.embedder_id;
    if (f == "model_name") return r.group.model_name.value_or("");
    if (f == "prompt_type") return r.group.prompt_type.value_or("");
    throw Error(Errc::UnknownField, f);
  };
  for (const auto& f : group_by) value(records.front(), f);

  struct Tally {
    std::size_t n = 0, generic = 0, catastrophic = 0;
  };
  std::map<std::vector<std::string>, Tally> tallies;
  for (const auto& r : records) {
    std::vector<std::string> key;
    for (const auto& f : group_by) key.push_back(value(r, f));
    auto& t = tallies[key];
    ++t.n;
    if (r.classification == Classification::Generic) ++t.generic;
    if (r.classification == Classification::Catastrophic) ++t.catastrophic;
  }

  std::vector<FailureRate> out;
  for (const auto& [key, t] : tallies) {
    const double n = static_cast<double>(t.n);
    out.push_back({key, t.n, static_cast<double>(t.generic) / n,
                   static_cast<double>(t.catastrophic) / n});
  }
  return out;
}

namespace {

using corpus::DescriptionRecord;

using ModelCellKey = std::tuple<std::string, std::string, std::string>;  // image, model, prompt
using HumansByImage = std::map<std::string, std::vector<const DescriptionRecord*>>;
using ModelsByCell = std::map<ModelCellKey, std::vector<const DescriptionRecord*>>;

struct TaskRecords {
  HumansByImage humans;
  ModelsByCell models;
};

struct UnitResult {
  std::vector<CalibrationBounds> bounds;
  std::vector<HcdRecord> records;
  std::vector<ExcludedCell> excluded;
};

std::vector<Vector> lookup_vectors(const embed::EmbeddingMatrix& m,
                                   const std::vector<const DescriptionRecord*>& recs) {
  std::vector<Vector> out;
  out.reserve(recs.size());
  for (const auto* r : recs) {
    auto idx = m.find(r->record_id);
    if (!idx)
      throw Error(Errc::MissingEmbedding,
                  "record '" + r->record_id + "' has no vector in '" + m.embedder_id() + "'");
    auto row = m.row(*idx);
    out.emplace_back(row.begin(), row.end());
  }
  return out;
}

UnitResult run_unit(const embed::EmbeddingMatrix& m, const std::string& task,
                    const TaskRecords& recs, const HcdOptions& opt) {
  UnitResult out;
  auto key_for = [&](const std::string& image) { return GroupKey{image, task, m.embedder_id(), {}, {}}; };

  struct ImageState {
    std::vector<Vector> humans;
    std::optional<Vector> centroid;
  };
  std::map<std::string, ImageState> images;
  for (const auto& [image, list] : recs.humans) {
    ImageState st;
    st.humans = lookup_vectors(m, list);
    try {
      st.centroid = human_centroid(st.humans);
    } catch (const Error& e) {
      if (e.code() != Errc::DegenerateMean) throw;
    }
    images.emplace(image, std::move(st));
  }

  auto others_of = [&](const std::string& image) {
    std::vector<Vector> cs;
    for (const auto& [other, st] : images)
      if (other != image && st.centroid) cs.push_back(*st.centroid);
    return cs;
  };

  std::optional<double> global_ub;
  if (opt.ub_scope == UbScope::Global) {
    std::vector<double> pooled;
    for (const auto& [image, st] : images) {
      if (!st.centroid) continue;
      auto d = cross_image_distances(st.humans, others_of(image));
      pooled.insert(pooled.end(), d.begin(), d.end());
    }
    if (!pooled.empty()) global_ub = stats::percentile(pooled, kUpperBoundPercentile);
  }

  std::map<std::string, CalibrationBounds> valid;
  for (const auto& [image, st] : images) {
    auto exclude = [&](std::string reason) { out.excluded.push_back({key_for(image), std::move(reason)}); };
    if (st.humans.size() < 2) {
      exclude("fewer than 2 human descriptions");
      continue;
    }
    if (!st.centroid) {
      exclude("degenerate human mean");
      continue;
    }
    double lb = 0.0;
    try {
      lb = lower_bound(st.humans, opt.lb_mode);
    } catch (const Error& e) {
      if (e.code() != Errc::DegenerateMean) throw;
      exclude("degenerate leave-one-out mean");
      continue;
    }
    double ub = 0.0;
    if (opt.ub_scope == UbScope::PerImage) {
      const auto others = others_of(image);
      if (others.empty()) {
        exclude("no other images for the upper bound");
        continue;
      }
      ub = upper_bound(st.humans, others);
    } else {
      if (!global_ub) {
        exclude("no other images for the upper bound");
        continue;
      }
      ub = *global_ub;
    }
    if (!(ub - lb >= kMinBoundsSpread)) {
      exclude("degenerate bounds (ub - lb < 1e-9)");
      continue;
    }
    CalibrationBounds b{key_for(image), *st.centroid, lb, ub, st.humans.size()};
    out.bounds.push_back(b);
    valid.emplace(image, std::move(b));
  }

  for (const auto& [cell, list] : recs.models) {
    const auto& [image, model_name, prompt] = cell;
    GroupKey key{image, task, m.embedder_id(), model_name, prompt};
    auto it = valid.find(image);
    if (it == valid.end()) {
      out.excluded.push_back({key, "no valid calibration bounds for image"});
      continue;
    }
    const auto model_vectors = lookup_vectors(m, list);
    auto rec = opt.dhm_mode == DhmMode::Centroid
                   ? compute_hcd(model_vectors, it->second, opt.dhm_mode)
                   : compute_hcd(model_vectors, it->second, opt.dhm_mode, images.at(image).humans);
    rec.group = key;
    out.records.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

HcdRun evaluate(std::span<const DescriptionRecord> records,
                std::span<const embed::EmbeddingMatrix> embeddings, const HcdOptions& options) {
  std::vector<embed::EmbeddingMatrix> unit;
  unit.reserve(embeddings.size());
  for (const auto& m : embeddings) {
    const auto missing = embed::unresolved_ids(m, records);
    if (!missing.empty())
      throw Error(Errc::UnknownRecordId, "'" + missing.front() + "' in embeddings '" +
                                             m.embedder_id() + "' (" +
                                             std::to_string(missing.size()) + " unresolved)");
    unit.push_back(embed::normalize(m));
  }

  std::map<std::string, TaskRecords> by_task;
  for (const auto& r : records) {
    auto& t = by_task[r.task];
    if (r.source == corpus::Source::Human) {
      t.humans[r.image_id].push_back(&r);
    } else {
      t.models[{r.image_id, r.model_name.value_or(""),
                std::string(corpus::to_string(*r.prompt_type))}]
          .push_back(&r);
    }
  }
  auto by_id = [](const DescriptionRecord* a, const DescriptionRecord* b) {
    return a->record_id < b->record_id;
  };
  for (auto& [task, t] : by_task) {
    for (auto& [_, list] : t.humans) std::sort(list.begin(), list.end(), by_id);
    for (auto& [_, list] : t.models) std::sort(list.begin(), list.end(), by_id);
  }

  std::vector<std::pair<std::size_t, const std::string*>> units;
  for (std::size_t e = 0; e < unit.size(); ++e)
    for (const auto& [task, _] : by_task) units.emplace_back(e, &task);

  std::vector<UnitResult> results(units.size());
  parallel_for(units.size(), options.threads, [&](std::size_t i) {
    const auto& [e, task] = units[i];
    results[i] = run_unit(unit[e], *task, by_task.at(*task), options);
  });

  HcdRun run;
  for (auto& r : results) {
    std::move(r.bounds.begin(), r.bounds.end(), std::back_inserter(run.bounds));
    std::move(r.records.begin(), r.records.end(), std::back_inserter(run.records));
    std::move(r.excluded.begin(), r.excluded.end(), std::back_inserter(run.excluded));
  }
  std::sort(run.bounds.begin(), run.bounds.end(),
            [](const auto& a, const auto& b) { return a.group < b.group; });
  std::sort(run.records.begin(), run.records.end(),
            [](const auto& a, const auto& b) { return a.group < b.group; });
  std::sort(run.excluded.begin(), run.excluded.end(),
            [](const auto& a, const auto& b) { return a.group < b.group; });
  return run;
}

}  // namespace hcdeval::calib
