#include "hcdeval/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <boost/math/special_functions/gamma.hpp>

#include "hcdeval/error.hpp"
#include "hcdeval/parallel.hpp"

namespace hcdeval::stats {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

void check_finite(std::span<const double> values) {
  for (double v : values)
    if (!std::isfinite(v)) throw Error(Errc::NonFiniteValue, "non-finite input to statistic");
}

}  // namespace

double percentile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw Error(Errc::EmptyInput, "percentile of empty input");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::BadP, "p must lie in [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double percentile(std::span<const double> values, double p) {
  check_finite(values);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return percentile_sorted(sorted, p);
}

double median(std::span<const double> values) {
  if (values.empty()) throw Error(Errc::EmptyInput, "median of empty input");
  check_finite(values);
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return sorted[n / 2];
  return 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

double mean(std::span<const double> values) {
  if (values.empty()) throw Error(Errc::EmptyInput, "mean of empty input");
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

TestResult wilcoxon_signed_rank(std::span<const double> deltas, Alternative alternative) {
  check_finite(deltas);
  std::vector<double> nz;
  nz.reserve(deltas.size());
  for (double d : deltas)
    if (d != 0.0) nz.push_back(d);
  if (nz.empty()) throw Error(Errc::AllZeros, "every delta is zero");

  const std::size_t n = nz.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return std::abs(nz[a]) < std::abs(nz[b]); });

  // Doubled average ranks are integers: a tie block spanning 1-based ranks
  // s..e gets rank (s + e) / 2.
  std::vector<std::uint32_t> rank2(n);
  double tie_term = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && std::abs(nz[order[j + 1]]) == std::abs(nz[order[i]])) ++j;
    const auto r2 = static_cast<std::uint32_t>((i + 1) + (j + 1));
    for (std::size_t k = i; k <= j; ++k) rank2[order[k]] = r2;
    const double t = static_cast<double>(j - i + 1);
    tie_term += t * t * t - t;
    i = j + 1;
  }

  std::uint64_t v2 = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (nz[i] > 0) v2 += rank2[i];

  TestResult result;
  result.statistic = static_cast<double>(v2) / 2.0;
  result.n = n;

  const double dn = static_cast<double>(n);
  if (n <= kWilcoxonExactMaxN) {
    // Number of sign assignments reaching each doubled rank sum; identical to
    // enumerating all 2^n patterns but polynomial.
    const std::size_t total2 = static_cast<std::size_t>(n * (n + 1));
    std::vector<double> ways(total2 + 1, 0.0);
    ways[0] = 1.0;
    std::size_t reach = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = rank2[i];
      reach += r;
      for (std::size_t s = reach; s >= r; --s) {
        ways[s] += ways[s - r];
        if (s == r) break;
      }
    }
    const double patterns = std::ldexp(1.0, static_cast<int>(n));
    double upper = 0.0;  // P(V >= observed)
    double lower = 0.0;  // P(V <= observed)
    for (std::size_t s = 0; s <= total2; ++s) {
      if (s >= v2) upper += ways[s];
      if (s <= v2) lower += ways[s];
    }
    upper /= patterns;
    lower /= patterns;
    switch (alternative) {
      case Alternative::Greater: result.p_value = upper; break;
      case Alternative::Less: result.p_value = lower; break;
      case Alternative::TwoSided: result.p_value = std::min(1.0, 2.0 * std::min(upper, lower)); break;
    }
    result.method = "wilcoxon signed-rank (exact)";
    result.exact = true;
  } else {
    const double mu = dn * (dn + 1.0) / 4.0;
    const double sigma = std::sqrt(dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0 - tie_term / 48.0);
    const double diff = result.statistic - mu;
    double correction = 0.0;
    switch (alternative) {
      case Alternative::TwoSided: correction = diff > 0 ? 0.5 : (diff < 0 ? -0.5 : 0.0); break;
      case Alternative::Greater: correction = 0.5; break;
      case Alternative::Less: correction = -0.5; break;
    }
    const double z = (diff - correction) / sigma;
    switch (alternative) {
      case Alternative::Greater: result.p_value = 1.0 - normal_cdf(z); break;
      case Alternative::Less: result.p_value = normal_cdf(z); break;
      case Alternative::TwoSided:
        result.p_value = std::min(1.0, 2.0 * std::min(normal_cdf(z), 1.0 - normal_cdf(z)));
        break;
    }
    result.method = "wilcoxon signed-rank (normal approximation, continuity corrected)";
    result.exact = false;
  }
  result.p_value = std::clamp(result.p_value, 0.0, 1.0);
  return result;
}

double chi2_sf(double x, double df) {
  if (!(df > 0.0)) throw Error(Errc::InvalidArgument, "chi-squared df must be positive");
  if (std::isnan(x)) throw Error(Errc::NonFiniteValue, "chi-squared statistic is NaN");
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(df / 2.0, x / 2.0);
}

Chi2Result chi2_2x2(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  const long double la = a, lb = b, lc = c, ld = d;
  const long double row1 = la + lb, row2 = lc + ld, col1 = la + lc, col2 = lb + ld;
  const long double n = row1 + row2;
  if (n == 0) throw Error(Errc::DegenerateMargin, "empty 2x2 table");
  if (row1 == 0 || row2 == 0 || col1 == 0 || col2 == 0)
    throw Error(Errc::DegenerateMargin, "a row or column total is zero");

  const long double det = la * ld - lb * lc;
  const long double phi = det / (std::sqrt(row1 * row2) * std::sqrt(col1 * col2));
  const double v = std::min(1.0, static_cast<double>(std::fabs(phi)));

  Chi2Result r;
  r.test.statistic = static_cast<double>(n * phi * phi);
  r.test.p_value = chi2_sf(r.test.statistic, 1.0);
  r.test.method = "pearson chi-squared 2x2 (no continuity correction)";
  r.test.n = static_cast<std::size_t>(a + b + c + d);
  r.test.exact = false;
  r.cramers_v = v;
  return r;
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::pair<double, double> bootstrap_ci(std::span<const double> values, const Statistic& statistic,
                                       std::size_t n_resamples, double level, std::uint64_t seed,
                                       unsigned threads) {
  if (values.size() < 2) throw Error(Errc::TooFewValues, "bootstrap needs at least 2 values");
  if (!(level > 0.0 && level < 1.0)) throw Error(Errc::InvalidArgument, "level must lie in (0, 1)");
  if (n_resamples == 0) throw Error(Errc::InvalidArgument, "n_resamples must be positive");
  check_finite(values);

  const std::size_t n = values.size();
  std::vector<double> stats(n_resamples);
  parallel_for(n_resamples, threads, [&](std::size_t r) {
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(r)));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::vector<double> sample(n);
    for (auto& x : sample) x = values[pick(rng)];
    stats[r] = statistic(sample);
  });
  std::sort(stats.begin(), stats.end());
  const double alpha = (1.0 - level) / 2.0;
  return {percentile_sorted(stats, alpha), percentile_sorted(stats, 1.0 - alpha)};
}

}  // namespace hcdeval::stats
