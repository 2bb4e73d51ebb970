#include "hcdeval/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_set>

#include <Eigen/Dense>

#include "hcdeval/error.hpp"
#include "hcdeval/parallel.hpp"

namespace hcdeval::geometry {

namespace {

// Eigenvalues below this fraction of the largest are treated as zero.
constexpr double kRelativeEigenTolerance = 1e-10;

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

Matrix Matrix::from_embeddings(const embed::EmbeddingMatrix& m) {
  Matrix out(m.size(), m.dim());
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto src = m.row(i);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  return out;
}

PcaResult pca_reduce(const Matrix& data, std::size_t n_components) {
  if (n_components < 1 || n_components >= data.rows || n_components > data.cols)
    throw Error(Errc::InvalidArgument,
                "pca needs rows > n_components >= 1 and n_components <= dim (rows=" +
                    std::to_string(data.rows) + ", dim=" + std::to_string(data.cols) +
                    ", n_components=" + std::to_string(n_components) + ")");

  const auto n = static_cast<Eigen::Index>(data.rows);
  const auto d = static_cast<Eigen::Index>(data.cols);
  Eigen::Map<const RowMatrix> x(data.data.data(), n, d);
  const Eigen::RowVectorXd mu = x.colwise().mean();
  const Eigen::MatrixXd centred = x.rowwise() - mu;
  const Eigen::MatrixXd cov = (centred.transpose() * centred) / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success)
    throw Error(Errc::RankDeficient, "covariance eigendecomposition failed");
  const Eigen::VectorXd& evals = solver.eigenvalues();  // ascending
  const Eigen::MatrixXd& evecs = solver.eigenvectors();

  const double largest = evals(d - 1);
  if (!(largest > 0.0)) throw Error(Errc::RankDeficient, "data has zero variance");

  std::size_t available = 0;
  for (Eigen::Index k = d - 1; k >= 0 && available < n_components; --k) {
    if (evals(k) <= largest * kRelativeEigenTolerance) break;
    ++available;
  }

  PcaResult out;
  out.n_components = available;
  out.mean.assign(mu.data(), mu.data() + d);
  out.components = Matrix(available, data.cols);
  out.explained_variance.resize(available);
  Eigen::MatrixXd basis(d, static_cast<Eigen::Index>(available));
  for (std::size_t c = 0; c < available; ++c) {
    const Eigen::Index src = d - 1 - static_cast<Eigen::Index>(c);
    Eigen::VectorXd v = evecs.col(src);
    Eigen::Index arg = 0;
    v.cwiseAbs().maxCoeff(&arg);
    if (v(arg) < 0) v = -v;
    basis.col(static_cast<Eigen::Index>(c)) = v;
    out.explained_variance[c] = evals(src);
    for (Eigen::Index j = 0; j < d; ++j) out.components(c, static_cast<std::size_t>(j)) = v(j);
  }

  const Eigen::MatrixXd scores = centred * basis;
  out.scores = Matrix(data.rows, available);
  for (Eigen::Index i = 0; i < n; ++i)
    for (std::size_t c = 0; c < available; ++c)
      out.scores(static_cast<std::size_t>(i), c) = scores(i, static_cast<Eigen::Index>(c));

  if (available < n_components) {
    out.rank_deficient = true;
    out.warning = "requested " + std::to_string(n_components) + " components, only " +
                  std::to_string(available) + " have non-zero variance";
  }
  return out;
}

std::string_view to_string(LabelLevel l) noexcept { return l == LabelLevel::Fine ? "fine" : "coarse"; }

std::optional<LabelLevel> parse_label_level(std::string_view s) {
  if (s == "fine") return LabelLevel::Fine;
  if (s == "coarse") return LabelLevel::Coarse;
  return std::nullopt;
}

std::size_t neighbours_for_class(double k_fraction, std::size_t class_size, std::size_t n_points) {
  // Round half up; the small slack absorbs products like 0.7 * 5 = 3.4999...
  const double scaled = k_fraction * static_cast<double>(class_size);
  auto k = static_cast<std::size_t>(std::floor(scaled + 0.5 + 1e-9));
  k = std::max<std::size_t>(k, 1);
  return std::min(k, n_points - 1);
}

std::vector<PurityResult> k_sweep(const PurityInput& input, std::span<const double> fractions,
                                  unsigned threads) {
  if (input.points == nullptr) throw Error(Errc::InvalidArgument, "no points");
  const Matrix& pts = *input.points;
  const std::size_t n = pts.rows;
  if (n < 2) throw Error(Errc::InvalidArgument, "purity needs at least 2 points");
  if (input.labels.size() != n || input.ids.size() != n)
    throw Error(Errc::InvalidArgument, "labels/ids must match the number of points");
  if (fractions.empty()) throw Error(Errc::InvalidArgument, "no k fractions");
  for (double f : fractions)
    if (!(f > 0.0 && f <= 1.0)) throw Error(Errc::InvalidArgument, "k fraction must lie in (0, 1]");
  {
    std::unordered_set<std::string_view> seen;
    for (const auto& id : input.ids)
      if (!seen.insert(id).second) throw Error(Errc::InvalidArgument, "duplicate id '" + id + "'");
  }

  // Dense label indices in sorted label order.
  std::map<std::string, std::size_t> class_size;
  for (const auto& l : input.labels) ++class_size[l];
  for (const auto& [label, size] : class_size)
    if (size < 2) throw Error(Errc::SingletonClass, label);
  std::map<std::string, std::size_t> label_index;
  for (const auto& [label, _] : class_size) label_index.emplace(label, label_index.size());
  std::vector<std::size_t> lab(n);
  for (std::size_t i = 0; i < n; ++i) lab[i] = label_index.at(input.labels[i]);
  std::vector<std::size_t> sizes;
  for (const auto& [_, size] : class_size) sizes.push_back(size);

  // k per (fraction, class).
  std::vector<std::vector<std::size_t>> k_table(fractions.size());
  std::size_t k_max = 0;
  for (std::size_t f = 0; f < fractions.size(); ++f)
    for (std::size_t c = 0; c < sizes.size(); ++c) {
      k_table[f].push_back(neighbours_for_class(fractions[f], sizes[c], n));
      k_max = std::max(k_max, k_table[f].back());
    }

  Matrix unit(n, pts.cols);
  for (std::size_t i = 0; i < n; ++i) {
    auto v = embed::normalized(pts.row(i), input.ids[i]);
    std::copy(v.begin(), v.end(), unit.row(i).begin());
  }

  // per_point[i][f] = purity of point i at fraction f
  std::vector<std::vector<double>> per_point(n, std::vector<double>(fractions.size()));
  parallel_for(n, threads, [&](std::size_t i) {
    std::vector<std::pair<double, std::size_t>> cand;
    cand.reserve(n - 1);
    const auto ui = unit.row(i);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) cand.emplace_back(embed::cosine_distance_unchecked(ui, unit.row(j)), j);
    auto closer = [&](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first < b.first;
      return input.ids[a.second] < input.ids[b.second];
    };
    std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k_max), cand.end(),
                      closer);
    std::vector<std::size_t> same_prefix(k_max + 1, 0);
    for (std::size_t r = 0; r < k_max; ++r)
      same_prefix[r + 1] = same_prefix[r] + (lab[cand[r].second] == lab[i] ? 1 : 0);
    for (std::size_t f = 0; f < fractions.size(); ++f) {
      const std::size_t k = k_table[f][lab[i]];
      per_point[i][f] = static_cast<double>(same_prefix[k]) / static_cast<double>(k);
    }
  });

  std::vector<PurityResult> out;
  for (std::size_t f = 0; f < fractions.size(); ++f) {
    PurityResult r;
    r.source_id = input.source_id;
    r.level = input.level;
    r.k_fraction = fractions[f];
    r.n_points = n;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += per_point[i][f];
    r.purity = sum / static_cast<double>(n);
    std::size_t c = 0;
    for (const auto& [label, _] : class_size) r.k_by_class.emplace_back(label, k_table[f][c++]);
    out.push_back(std::move(r));
  }
  return out;
}

PurityResult knn_purity(const PurityInput& input, double k_fraction, unsigned threads) {
  const double fractions[] = {k_fraction};
  return k_sweep(input, fractions, threads).front();
}

std::vector<Projection> project_2d(const Matrix& data, std::span<const std::string> ids) {
  if (data.rows < 3) throw Error(Errc::InvalidArgument, "projection needs at least 3 points");
  if (ids.size() != data.rows) throw Error(Errc::InvalidArgument, "ids must match rows");
  const auto pca = pca_reduce(data, std::min<std::size_t>(2, data.cols));
  std::vector<Projection> out;
  out.reserve(data.rows);
  for (std::size_t i = 0; i < data.rows; ++i) {
    Projection p{ids[i], pca.scores(i, 0), 0.0};
    if (pca.n_components > 1) p.y = pca.scores(i, 1);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace hcdeval::geometry
