#include <cmath>
#include <random>

#include "hcdeval/calibration.hpp"
#include "hcdeval/stats.hpp"
#include "hcdeval/csv.hpp"
#include "unit/common.hpp"

using namespace hcdeval;
using namespace hcdeval::calib;

namespace {

std::vector<Vector> units(std::initializer_list<Vector> vs) {
  std::vector<Vector> out;
  for (const auto& v : vs) out.push_back(embed::normalized(v));
  return out;
}

// Random orthogonal matrix by Gram-Schmidt on Gaussian columns.
std::vector<oracle::Vec> random_orthogonal(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<oracle::Vec> q;
  while (q.size() < d) {
    oracle::Vec v(d);
    for (double& x : v) x = g(rng);
    for (const auto& b : q) {
      double p = 0;
      for (std::size_t i = 0; i < d; ++i) p += v[i] * b[i];
      for (std::size_t i = 0; i < d; ++i) v[i] -= p * b[i];
    }
    q.push_back(oracle::unit(v));
  }
  return q;
}

embed::EmbeddingMatrix transform(const embed::EmbeddingMatrix& m,
                                 const std::vector<oracle::Vec>& q, double scale_seed) {
  embed::EmbeddingMatrix out(m.embedder_id(), m.dim());
  for (std::size_t r = 0; r < m.size(); ++r) {
    std::vector<double> v(m.dim(), 0.0);
    const double s = 0.1 + std::fmod(scale_seed * static_cast<double>(r + 1), 9.0);
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t j = 0; j < m.dim(); ++j) v[i] += s * q[i][j] * m.row(r)[j];
    out.append(m.id(r), v);
  }
  return out;
}

HcdRun run(const testsupport::HcdFixture& f, const embed::EmbeddingMatrix& m,
           HcdOptions opt = {}) {
  return evaluate(f.records, std::span(&m, 1), opt);
}

}  // namespace

TEST(Calibration, ClassifyThresholds) {
  EXPECT_EQ(classify(-0.01), Classification::Generic);
  EXPECT_EQ(classify(0.0), Classification::InRange);
  EXPECT_EQ(classify(1.0), Classification::InRange);
  EXPECT_EQ(classify(1.01), Classification::Catastrophic);
}

TEST(Calibration, CentroidAndLooByHand) {
  auto hs = units({{1, 0}, {0, 1}, {1, 1}});
  auto c = human_centroid(hs);
  EXPECT_NEAR(c[0], std::sqrt(0.5), 1e-15);
  auto loo = loo_distances(hs);
  // Human 3 sits exactly on the mean direction of the other two.
  EXPECT_NEAR(loo[2], 0.0, 1e-15);
  EXPECT_NEAR(loo[0], oracle::cosine_distance({1, 0}, {0.5 * (0 + std::sqrt(0.5)), 0.5 * (1 + std::sqrt(0.5))}),
              1e-15);
  EXPECT_ERRC(human_centroid(units({{1, 0}, {-1, 0}})), Errc::DegenerateMean);
  EXPECT_ERRC(loo_distances(units({{1, 0}})), Errc::TooFewHumans);
  const std::vector<Vector> raw = {{2, 0}, {0, 1}};
  EXPECT_ERRC(human_centroid(raw), Errc::NormViolation);
  EXPECT_ERRC(upper_bound(hs, {}), Errc::NoOtherImages);
}

TEST(Calibration, LowerBoundMeanMode) {
  auto hs = units({{1, 0.1}, {0.2, 1}, {1, 1}, {0.5, 0.3}});
  auto loo = loo_distances(hs);
  EXPECT_NEAR(lower_bound(hs, LbMode::Mean), stats::mean(loo), 1e-15);
  EXPECT_NEAR(lower_bound(hs), stats::median(loo), 1e-15);
}

TEST(Calibration, ComputeHcdErrors) {
  CalibrationBounds b{{"i", "t", "e", {}, {}}, embed::normalized(Vector{1, 0}), 0.2, 0.2, 3};
  const std::vector<Vector> m = units({{1, 1}});
  EXPECT_ERRC(compute_hcd(m, b), Errc::DegenerateBounds);
  b.ub = 0.5;
  EXPECT_ERRC(compute_hcd({}, b), Errc::NoModelVectors);
  auto r = compute_hcd(m, b);
  EXPECT_NEAR(r.d_hm, 1 - std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(r.hcd, (r.d_hm - 0.2) / 0.3, 1e-15);
}

TEST(Calibration, EvaluateMatchesBruteForceOracle) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = testsupport::random_hcd_fixture(rng);
    const auto out = run(f, f.matrix);
    std::size_t checked = 0;
    for (const auto& r : out.records) {
      const std::size_t img = static_cast<std::size_t>(
          std::find(f.image_ids.begin(), f.image_ids.end(), r.group.image_id) - f.image_ids.begin());
      const auto o = oracle::hcd(f.humans, img, f.models[img]);
      EXPECT_NEAR(r.lb, o.lb, 1e-9);
      EXPECT_NEAR(r.ub, o.ub, 1e-9);
      EXPECT_NEAR(r.d_hm, o.d_hm, 1e-9);
      EXPECT_NEAR(r.hcd, o.hcd, 1e-9);
      ++checked;
    }
    EXPECT_EQ(checked + out.excluded.size(), f.image_ids.size());
  }
}

TEST(Calibration, InvariantUnderRotationAndScaling) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = testsupport::random_hcd_fixture(rng);
    const auto q = random_orthogonal(f.matrix.dim(), rng);
    const auto base = run(f, f.matrix);
    const auto moved = run(f, transform(f.matrix, q, 1.37 + trial));
    ASSERT_EQ(base.records.size(), moved.records.size());
    for (std::size_t i = 0; i < base.records.size(); ++i) {
      EXPECT_NEAR(base.records[i].hcd, moved.records[i].hcd, 1e-9);
      EXPECT_NEAR(base.records[i].d_hm, moved.records[i].d_hm, 1e-9);
    }
  }
}

TEST(Calibration, ThreadCountDoesNotChangeResults) {
  std::mt19937_64 rng(7);
  const auto f = testsupport::random_hcd_fixture(rng);
  HcdOptions one, many;
  many.threads = 6;
  const auto a = run(f, f.matrix, one), b = run(f, f.matrix, many);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].group, b.records[i].group);
    EXPECT_EQ(a.records[i].hcd, b.records[i].hcd);
  }
}

TEST(Calibration, PairwiseModeAndGlobalScope) {
  std::mt19937_64 rng(11);
  const auto f = testsupport::random_hcd_fixture(rng);
  HcdOptions opt;
  opt.dhm_mode = DhmMode::Pairwise;
  const auto out = run(f, f.matrix, opt);
  for (const auto& r : out.records) {
    const std::size_t img = static_cast<std::size_t>(
        std::find(f.image_ids.begin(), f.image_ids.end(), r.group.image_id) - f.image_ids.begin());
    std::vector<double> d;
    for (const auto& h : f.humans[img])
      for (const auto& m : f.models[img]) d.push_back(oracle::cosine_distance(h, m));
    EXPECT_NEAR(r.d_hm, oracle::median(d), 1e-12);
  }
  HcdOptions global;
  global.ub_scope = UbScope::Global;
  const auto g = run(f, f.matrix, global);
  std::vector<double> pooled;
  for (std::size_t i = 0; i < f.humans.size(); ++i)
    for (std::size_t o = 0; o < f.humans.size(); ++o)
      if (o != i)
        for (const auto& h : f.humans[i])
          pooled.push_back(oracle::cosine_distance(h, oracle::mean_of_units(f.humans[o])));
  for (const auto& b : g.bounds) EXPECT_NEAR(b.ub, oracle::quantile7(pooled, 0.95), 1e-12);
}

TEST(Calibration, MissingEmbeddingAndUnknownIds) {
  std::mt19937_64 rng(1);
  auto f = testsupport::random_hcd_fixture(rng);
  embed::EmbeddingMatrix partial("p", f.matrix.dim());
  for (std::size_t i = 1; i < f.matrix.size(); ++i) partial.append(f.matrix.id(i), f.matrix.row(i));
  EXPECT_ERRC(run(f, partial), Errc::MissingEmbedding);
  auto extra = f.matrix;
  extra.append("stranger", f.matrix.row(0));
  EXPECT_ERRC(run(f, extra), Errc::UnknownRecordId);
}

TEST(Calibration, SingleImageCellsAreExcluded) {
  std::vector<corpus::DescriptionRecord> recs = {testsupport::human("h1", "a"), testsupport::human("h2", "a"),
                                                 testsupport::model("m1", "a")};
  embed::EmbeddingMatrix m("e", 2);
  m.append("h1", std::vector<double>{1, 0});
  m.append("h2", std::vector<double>{1, 0.2});
  m.append("m1", std::vector<double>{0, 1});
  const auto out = evaluate(recs, std::span(&m, 1), {});
  EXPECT_TRUE(out.records.empty());
  ASSERT_EQ(out.excluded.size(), 2u);
}

TEST(Calibration, FailureRates) {
  std::vector<HcdRecord> rs(4);
  const char* models[] = {"a", "a", "b", "b"};
  const double hcd[] = {-0.5, 0.5, 2.0, 1.5};
  for (int i = 0; i < 4; ++i) {
    rs[i].group = {"img", "navigation", "e", models[i], "human"};
    rs[i].classification = classify(hcd[i]);
  }
  const std::vector<std::string> by = {"model_name"};
  auto fr = failure_rates(rs, by);
  ASSERT_EQ(fr.size(), 2u);
  EXPECT_DOUBLE_EQ(fr[0].generic_rate, 0.5);
  EXPECT_DOUBLE_EQ(fr[1].catastrophic_rate, 1.0);
  const std::vector<std::string> tg = {"task_group"};
  EXPECT_EQ(failure_rates(rs, tg)[0].group, std::vector<std::string>{"affordances"});
  const std::vector<std::string> bad = {"colour"};
  EXPECT_ERRC(failure_rates(rs, bad), Errc::UnknownField);
  EXPECT_ERRC(failure_rates({}, by), Errc::EmptyInput);
}

TEST(Calibration, BundledFixtureMatchesNumpyReference) {
  const auto corpus = corpus::load_corpus(data_path("fixture/corpus.jsonl"), corpus::SchemaMode::Strict);
  std::vector<embed::EmbeddingMatrix> ms = {embed::load_embeddings(data_path("fixture/alt8.emb1"), "alt8"),
                                            embed::load_embeddings(data_path("fixture/mini8.emb1"), "mini8")};
  const auto out = evaluate(corpus.records, ms, {});
  const auto ref = io::load_csv(data_path("fixture/hcd_reference.csv"));
  ASSERT_EQ(out.records.size(), ref.rows.size());
  std::map<std::string, const HcdRecord*> by_key;
  for (const auto& r : out.records)
    by_key[r.group.image_id + "|" + r.group.task + "|" + r.group.embedder_id + "|" + *r.group.model_name] = &r;
  for (const auto& row : ref.rows) {
    const auto* r = by_key.at(row[0] + "|" + row[1] + "|" + row[2] + "|" + row[3]);
    EXPECT_EQ(*r->group.prompt_type, row[4]);
    EXPECT_NEAR(r->lb, std::stod(row[5]), 1e-12);
    EXPECT_NEAR(r->ub, std::stod(row[6]), 1e-12);
    EXPECT_NEAR(r->d_hm, std::stod(row[7]), 1e-12);
    EXPECT_NEAR(r->hcd, std::stod(row[8]), 1e-10);
  }
}
