#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hcdeval/corpus.hpp"
#include "hcdeval/embedstore.hpp"
#include "hcdeval/lexicon.hpp"
#include "hcdeval/sentiment.hpp"
#include "hcdeval/tokenize.hpp"

namespace hcdeval::text {

inline constexpr double kDefaultWinsorEpsilon = 1e-5;

/// Shannon entropy (bits) of the token distribution. Throws EmptyText.
double lexical_entropy(std::span<const std::string> tokens);

/// Distinct / total. Throws EmptyText.
double type_token_ratio(std::span<const std::string> tokens);

/// Mean cosine similarity over unordered pairs of token occurrences that
/// have a non-zero vector. nullopt when fewer than two such tokens.
std::optional<double> mean_pairwise_similarity(std::span<const std::string> tokens,
                                               const embed::WordVectorTable& wv);

/// Whole-token match; multi-word terms match as contiguous token runs.
bool contains_hedge(std::span<const std::string> tokens, const lex::Lexicon& hedges);

struct HedgeRate {
  corpus::PartitionKey group;
  std::size_t n = 0;
  std::size_t n_hedged = 0;
  double proportion = 0.0;
};

/// Share of descriptions per group with at least one hedge. Throws EmptyLexicon.
std::vector<HedgeRate> hedge_rate(std::span<const corpus::DescriptionRecord> records,
                                  const lex::Lexicon& hedges,
                                  std::span<const std::string> group_by);

/// ln(p / (1 - p)) after clamping p to [eps, 1 - eps].
/// Throws BadEpsilon unless 0 < eps < 0.5, InvalidArgument unless 0 <= p <= 1.
double logit_winsorize(double p, double eps = kDefaultWinsorEpsilon);

struct StyleMetrics {
  std::string record_id;
  std::size_t n_words = 0;
  std::optional<double> entropy_bits;  // absent for empty text
  std::optional<double> ttr;
  std::optional<double> mean_pairwise_sim;
  std::optional<bool> hedge_hit;   // absent without a hedge lexicon
  std::optional<double> sentiment;  // absent without a valence lexicon
};

struct StyleResources {
  const embed::WordVectorTable* word_vectors = nullptr;
  const lex::Lexicon* hedges = nullptr;
  const SentimentAnalyzer* sentiment = nullptr;
};

StyleMetrics style_metrics(const corpus::DescriptionRecord& record, const StyleResources& res);

/// style_metrics over all records, output in input order.
std::vector<StyleMetrics> style_metrics(std::span<const corpus::DescriptionRecord> records,
                                        const StyleResources& res, unsigned threads = 1);

}  // namespace hcdeval::text
