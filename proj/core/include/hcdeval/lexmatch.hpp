#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hcdeval/lexicon.hpp"

namespace hcdeval::lex {

inline constexpr double kDefaultSmoothing = 0.5;

struct FrequencyTable {
  double total = 0.0;  // token count; stays exact well past 2^40
  std::unordered_map<std::string, double> counts;
  double smoothing = kDefaultSmoothing;

  /// count / total, or smoothing / total for unseen terms.
  double relative_frequency(const std::string& term) const;
  double count(const std::string& term) const;
};

/// Exact counts over a token stream. Throws EmptyCorpus.
FrequencyTable build_frequency_table(std::span<const std::string> tokens,
                                     double smoothing = kDefaultSmoothing);

/// Tokenizes a plain-text reference corpus line by line. With `tagged`, each
/// whitespace-separated item is taken as word/TAG (Brown style) and the tag is
/// dropped before tokenizing. Throws EmptyCorpus.
FrequencyTable read_reference_corpus(std::istream& in, bool tagged,
                                     double smoothing = kDefaultSmoothing);
FrequencyTable load_reference_corpus(const std::string& path, bool tagged,
                                     double smoothing = kDefaultSmoothing);

enum class FrequencyScale { Log, Raw };
std::string_view to_string(FrequencyScale s) noexcept;
std::optional<FrequencyScale> parse_frequency_scale(std::string_view s);

/// Midpoint: q_j = (j - 0.5) / n. Endpoints: q_j = (j - 1) / (n - 1), 0.5 for n = 1.
enum class QuantileGrid { Midpoint, Endpoints };
std::string_view to_string(QuantileGrid g) noexcept;
std::optional<QuantileGrid> parse_quantile_grid(std::string_view s);

struct MatchOptions {
  FrequencyScale scale = FrequencyScale::Log;
  QuantileGrid grid = QuantileGrid::Midpoint;
};

struct MatchStep {
  double q = 0.0;
  double target_value = 0.0;  // interpolated over the target lexicon
  std::string term;
  double term_value = 0.0;
};

struct MatchResult {
  Lexicon lexicon;  // terms in selection order
  std::vector<MatchStep> steps;
};

/// Term value on the chosen scale (log relative frequency by default).
double scaled_frequency(const FrequencyTable& freq, const std::string& term, FrequencyScale scale);

/// For each grid point in ascending order, interpolate (type 7) a value over
/// the target terms and take the unused candidate closest to it; ties go to
/// the lexicographically smaller term. Throws EmptyTarget, PoolExhausted, and
/// InvalidArgument for out_size 0.
MatchResult quantile_match(const Lexicon& target, const Lexicon& candidates,
                           const FrequencyTable& freq, std::size_t out_size,
                           const MatchOptions& options = {});

}  // namespace hcdeval::lex
