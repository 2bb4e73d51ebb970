#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hcdeval::stats {

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::string method;
  std::size_t n = 0;
  bool exact = false;
};

/// Type-7 (linear interpolation) sample quantile, p in [0, 1].
/// Throws EmptyInput / BadP.
double percentile(std::span<const double> values, double p);

/// Same as percentile() for input that is already sorted ascending.
double percentile_sorted(std::span<const double> sorted, double p);

/// Middle order statistic; mean of the two central ones for even counts.
double median(std::span<const double> values);
double mean(std::span<const double> values);

enum class Alternative { TwoSided, Greater, Less };

// Exact null distribution is enumerated up to this many non-zero deltas.
inline constexpr std::size_t kWilcoxonExactMaxN = 25;

/// Wilcoxon signed-rank test. Zero deltas are dropped; V is the sum of the
/// (average) ranks of |delta| over positive deltas. Exact p for n <= 25,
/// otherwise normal approximation with tie and continuity corrections.
/// Throws AllZeros.
TestResult wilcoxon_signed_rank(std::span<const double> deltas,
                                Alternative alternative = Alternative::TwoSided);

/// Upper tail of the chi-squared distribution with `df` degrees of freedom,
/// via the regularized upper incomplete gamma function.
double chi2_sf(double x, double df);

struct Chi2Result {
  TestResult test;
  double cramers_v = 0.0;
};

/// Pearson chi-squared on the 2x2 table [[a, b], [c, d]] without continuity
/// correction; Cramér's V = sqrt(chi2 / n). Throws DegenerateMargin when any
/// row or column total is zero.
Chi2Result chi2_2x2(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d);

using Statistic = std::function<double(std::span<const double>)>;

/// Percentile bootstrap interval at confidence `level`. Each resample draws
/// from its own generator seeded from (seed, resample index) so the result
/// does not depend on how resamples are scheduled. Throws TooFewValues.
std::pair<double, double> bootstrap_ci(std::span<const double> values, const Statistic& statistic,
                                       std::size_t n_resamples, double level, std::uint64_t seed,
                                       unsigned threads = 1);

/// Stateless 64-bit mixer used to derive per-task seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace hcdeval::stats
