#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hcdeval/conllu.hpp"
#include "hcdeval/lexicon.hpp"

namespace hcdeval::syntax {

enum class Feature { AsVerb, SecondPerson, Modal, SpatialPrep, Imperative, Purpose };
inline constexpr std::size_t kFeatureCount = 6;
inline constexpr std::array<Feature, kFeatureCount> kFeatures = {
    Feature::AsVerb,      Feature::SecondPerson, Feature::Modal,
    Feature::SpatialPrep, Feature::Imperative,   Feature::Purpose};

std::string_view to_string(Feature f) noexcept;

using FeatureVector = std::array<bool, kFeatureCount>;

enum class MatchOn { Lemma, Surface };
std::string_view to_string(MatchOn m) noexcept;
std::optional<MatchOn> parse_match_on(std::string_view s);

/// Where a purpose clause may sit relative to the term: the term inside the
/// clause ("to open"), the term governing it ("a key to open ..."), or both.
enum class PurposeScope { Inside, Governing, Both };
std::string_view to_string(PurposeScope p) noexcept;
std::optional<PurposeScope> parse_purpose_scope(std::string_view s);

const std::set<std::string>& default_modals();
const std::set<std::string>& default_spatial_prepositions();

struct SyntaxOptions {
  MatchOn match = MatchOn::Lemma;
  PurposeScope purpose_scope = PurposeScope::Both;
  bool questions_block_imperative = true;
  std::set<std::string> modals = default_modals();
  std::set<std::string> spatial = default_spatial_prepositions();
};

struct Occurrence {
  std::string sentence_id;
  int token_id = 0;
  std::string term;
  FeatureVector features{};
};

/// One row per token whose lowercased lemma (or form) is a lexicon term.
/// Accepts Universal Dependencies relations and the older spaCy/ClearNLP
/// labels (prep, pobj, pcomp, prt, nsubjpass).
std::vector<Occurrence> extract_features(const ParsedSentence& sentence, const lex::Lexicon& lexicon,
                                         const SyntaxOptions& options = {});

struct FeatureCounts {
  std::string corpus_id;
  std::string lexicon_category;
  std::size_t total = 0;
  std::array<std::size_t, kFeatureCount> with{};
  std::map<std::string, std::size_t> term_occurrences;

  std::size_t without(Feature f) const { return total - with[static_cast<std::size_t>(f)]; }
  void add(const Occurrence& o);
  FeatureCounts& operator+=(const FeatureCounts& other);
};

FeatureCounts count_features(std::span<const ParsedSentence> sentences, const lex::Lexicon& lexicon,
                             const SyntaxOptions& options = {}, unsigned threads = 1);

struct FeatureComparison {
  Feature feature{};
  double rate_a = 0.0;
  double rate_b = 0.0;
  double percent_difference = 0.0;  // 100 * (rate_b - rate_a)
  double chi2 = 0.0;
  double p_value = 1.0;
  double cramers_v = 0.0;
};

/// 2x2 chi-squared per feature (corpus x with/without), no continuity
/// correction. A feature absent (or present) everywhere gives chi2 = 0,
/// p = 1, V = 0. Throws EmptyCorpusCounts when either total is zero.
std::vector<FeatureComparison> compare_corpora(const FeatureCounts& a, const FeatureCounts& b);

/// Occurrences of lexicon_a terms over occurrences of terms from either
/// lexicon. Throws OverlappingLexicons, ZeroDenominator.
double matched_term_share(const std::map<std::string, std::size_t>& occurrences,
                          const lex::Lexicon& lexicon_a, const lex::Lexicon& lexicon_b);

}  // namespace hcdeval::syntax
