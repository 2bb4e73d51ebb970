#pragma once

// Deliberately naive reference implementations. They share no code with the
// library and favour directness over speed.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

inline double cosine_distance(const Vec& a, const Vec& b) {
  double ab = 0, aa = 0, bb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  return 1.0 - ab / (std::sqrt(aa) * std::sqrt(bb));
}

inline Vec unit(const Vec& v) {
  double s = 0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  Vec out(v);
  for (double& x : out) x /= s;
  return out;
}

inline Vec mean_of_units(const std::vector<Vec>& vs) {
  Vec m(vs.front().size(), 0.0);
  for (const auto& v : vs) {
    const Vec u = unit(v);
    for (std::size_t i = 0; i < u.size(); ++i) m[i] += u[i];
  }
  for (double& x : m) x /= static_cast<double>(vs.size());
  return m;
}

inline double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

// Hyndman-Fan type 7.
inline double quantile7(std::vector<double> xs, double p) {
  std::sort(xs.begin(), xs.end());
  const double h = (static_cast<double>(xs.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (h - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

struct HcdCell {
  double lb, ub, d_hm, hcd;
};

// humans[img] are raw vectors for one task; models are raw vectors for the
// target image. Centroid d_HM, median LOO lower bound, per-image upper bound.
inline HcdCell hcd(const std::vector<std::vector<Vec>>& humans, std::size_t target,
                   const std::vector<Vec>& models) {
  const auto& hs = humans[target];
  std::vector<double> loo;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    std::vector<Vec> rest;
    for (std::size_t j = 0; j < hs.size(); ++j)
      if (j != i) rest.push_back(hs[j]);
    loo.push_back(cosine_distance(hs[i], mean_of_units(rest)));
  }
  std::vector<double> cross;
  for (std::size_t o = 0; o < humans.size(); ++o) {
    if (o == target) continue;
    const Vec c = mean_of_units(humans[o]);
    for (const auto& h : hs) cross.push_back(cosine_distance(h, c));
  }
  const Vec centroid = mean_of_units(hs);
  std::vector<double> dm;
  for (const auto& m : models) dm.push_back(cosine_distance(m, centroid));
  HcdCell out{};
  out.lb = median(loo);
  out.ub = quantile7(cross, 0.95);
  out.d_hm = median(dm);
  out.hcd = (out.d_hm - out.lb) / (out.ub - out.lb);
  return out;
}

// Cyclic Jacobi eigenvalue iteration on a symmetric matrix. Returns
// (eigenvalues, eigenvectors as columns), sorted by descending eigenvalue.
inline std::pair<Vec, std::vector<Vec>> jacobi_eigen(std::vector<Vec> a) {
  const std::size_t n = a.size();
  std::vector<Vec> v(n, Vec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        const double c = 1 / std::sqrt(t * t + 1);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return a[x][x] > a[y][y]; });
  Vec vals;
  std::vector<Vec> vecs;
  for (auto k : order) {
    vals.push_back(a[k][k]);
    Vec col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = v[r][k];
    vecs.push_back(col);
  }
  return {vals, vecs};
}

// Sample covariance (divisor n - 1) of row vectors.
inline std::vector<Vec> covariance(const std::vector<Vec>& rows) {
  const std::size_t d = rows.front().size();
  Vec mu(d, 0.0);
  for (const auto& r : rows)
    for (std::size_t j = 0; j < d; ++j) mu[j] += r[j] / static_cast<double>(rows.size());
  std::vector<Vec> c(d, Vec(d, 0.0));
  for (const auto& r : rows)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) c[i][j] += (r[i] - mu[i]) * (r[j] - mu[j]);
  for (auto& row : c)
    for (double& x : row) x /= static_cast<double>(rows.size() - 1);
  return c;
}

// Mean kNN label purity: full sort of all other points per query.
inline double knn_purity(const std::vector<Vec>& pts, const std::vector<std::string>& labels,
                         const std::vector<std::string>& ids, double k_fraction) {
  std::map<std::string, std::size_t> sizes;
  for (const auto& l : labels) ++sizes[l];
  const std::size_t n = pts.size();
  double total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<double, std::string>> d;
    std::map<std::string, std::size_t> id_to_index;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) {
        d.emplace_back(cosine_distance(pts[i], pts[j]), ids[j]);
        id_to_index[ids[j]] = j;
      }
    std::sort(d.begin(), d.end());
    long k = std::lround(k_fraction * static_cast<double>(sizes[labels[i]]) + 1e-9);
    k = std::max(1L, std::min<long>(k, static_cast<long>(n - 1)));
    std::size_t same = 0;
    for (long r = 0; r < k; ++r) same += labels[id_to_index[d[r].second]] == labels[i];
    total += static_cast<double>(same) / static_cast<double>(k);
  }
  return total / static_cast<double>(n);
}

// Average ranks of |x| (1-based).
inline Vec abs_ranks(const Vec& x) {
  const std::size_t n = x.size();
  Vec r(n);
  for (std::size_t i = 0; i < n; ++i) {
    double less = 0, equal = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(x[j]) < std::abs(x[i])) ++less;
      else if (std::abs(x[j]) == std::abs(x[i])) ++equal;
    }
    r[i] = less + (equal + 1) / 2;
  }
  return r;
}

struct Wilcoxon {
  double v;
  double p_two_sided;
  double p_greater;
  double p_less;
};

// Exact signed-rank test by enumerating all 2^n sign patterns (zeros dropped).
inline Wilcoxon wilcoxon_enumerate(Vec x) {
  x.erase(std::remove(x.begin(), x.end(), 0.0), x.end());
  const std::size_t n = x.size();
  const Vec r = abs_ranks(x);
  double v = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (x[i] > 0) v += r[i];
  std::uint64_t ge = 0, le = 0;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    double s = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s += r[i];
    if (s >= v - 1e-9) ++ge;
    if (s <= v + 1e-9) ++le;
  }
  Wilcoxon w{};
  w.v = v;
  w.p_greater = static_cast<double>(ge) / static_cast<double>(total);
  w.p_less = static_cast<double>(le) / static_cast<double>(total);
  w.p_two_sided = std::min(1.0, 2 * std::min(w.p_greater, w.p_less));
  return w;
}

struct Chi2 {
  double chi2, p, v;
};

// Pearson statistic from expected counts; df = 1 so p = erfc(sqrt(chi2 / 2)).
inline Chi2 chi2_2x2(double a, double b, double c, double d) {
  const double n = a + b + c + d;
  const double obs[2][2] = {{a, b}, {c, d}};
  const double rows[2] = {a + b, c + d};
  const double cols[2] = {a + c, b + d};
  double x = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const double e = rows[i] * cols[j] / n;
      x += (obs[i][j] - e) * (obs[i][j] - e) / e;
    }
  return {x, std::erfc(std::sqrt(x / 2)), std::sqrt(x / n)};
}

// Greedy quantile-matched selection: at each midpoint quantile take the
// unused candidate whose value is nearest the target quantile, preferring
// the alphabetically first term on ties.
inline std::vector<std::string> quantile_match(const std::map<std::string, double>& target,
                                               const std::map<std::string, double>& pool,
                                               std::size_t n) {
  std::vector<double> tv;
  for (const auto& [_, v] : target) tv.push_back(v);
  std::set<std::string> used;
  std::vector<std::string> out;
  for (std::size_t j = 1; j <= n; ++j) {
    const double q = quantile7(tv, (static_cast<double>(j) - 0.5) / static_cast<double>(n));
    std::string best;
    double best_d = INFINITY;
    for (const auto& [term, v] : pool) {  // map order = alphabetical
      if (used.count(term)) continue;
      const double dist = std::abs(v - q);
      if (dist < best_d) {
        best_d = dist;
        best = term;
      }
    }
    used.insert(best);
    out.push_back(best);
  }
  return out;
}

}  // namespace oracle
