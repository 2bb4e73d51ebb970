#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <unordered_map>

namespace hcdeval::text {

/// token -> valence, as read from a "token<TAB>valence[<TAB>...]" file.
struct ValenceLexicon {
  std::unordered_map<std::string, double> valence;

  const double* find(const std::string& token) const {
    auto it = valence.find(token);
    return it == valence.end() ? nullptr : &it->second;
  }
};

/// Extra tab-separated columns are ignored; later duplicates win.
ValenceLexicon read_valence_lexicon(std::istream& in);
ValenceLexicon load_valence_lexicon(const std::string& path);

/// Rule-based valence scorer following the VADER heuristics: negation in a
/// three-word window, booster and dampener words, ALL-CAPS emphasis, idioms,
/// "least", contrastive "but", and '!'/'?' amplification. Works on the raw
/// text with its own whitespace split rather than the word tokenizer, since
/// case and attached punctuation carry signal here.
class SentimentAnalyzer {
 public:
  /// Throws MissingLexicon for an empty lexicon.
  explicit SentimentAnalyzer(ValenceLexicon lexicon);

  /// Normalised compound score in [-1, 1].
  double compound(std::string_view text) const;

  /// compound() on the [-100, 100] scale.
  double score(std::string_view text) const { return 100.0 * compound(text); }

 private:
  ValenceLexicon lexicon_;
};

}  // namespace hcdeval::text
