#include "hcdeval/syntax.hpp"

#include "hcdeval/error.hpp"
#include "hcdeval/parallel.hpp"
#include "hcdeval/stats.hpp"
#include "hcdeval/tokenize.hpp"

namespace hcdeval::syntax {

namespace {

bool unset(const std::string& s) { return s.empty() || s == "_"; }

// Lowercased relation without its subtype: "obl:tmod" -> "obl".
std::string base_rel(const Token& t) {
  return text::to_lower(std::string_view(t.deprel).substr(0, t.deprel.find(':')));
}

std::string lemma_of(const Token& t) { return text::to_lower(unset(t.lemma) ? t.form : t.lemma); }
std::string form_of(const Token& t) { return text::to_lower(t.form); }

bool has_feat(const Token& t, std::string_view feat) {
  std::string_view rest = t.feats;
  while (!rest.empty()) {
    const auto bar = rest.find('|');
    if (rest.substr(0, bar) == feat) return true;
    if (bar == std::string_view::npos) break;
    rest.remove_prefix(bar + 1);
  }
  return false;
}

class Tree {
 public:
  explicit Tree(const ParsedSentence& s) : s_(s), kids_(s.tokens.size()) {
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      const int h = s.tokens[i].head;
      if (h == 0) root_ = i;
      else kids_[static_cast<std::size_t>(h - 1)].push_back(i);
    }
  }

  const Token& at(std::size_t i) const { return s_.tokens[i]; }
  const std::vector<std::size_t>& children(std::size_t i) const { return kids_[i]; }
  std::size_t size() const { return s_.tokens.size(); }
  std::size_t root() const { return root_; }
  std::optional<std::size_t> head(std::size_t i) const {
    const int h = s_.tokens[i].head;
    if (h == 0) return std::nullopt;
    return static_cast<std::size_t>(h - 1);
  }

 private:
  const ParsedSentence& s_;
  std::vector<std::vector<std::size_t>> kids_;
  std::size_t root_ = 0;
};

bool is_to_marker(const Token& t) {
  const auto rel = base_rel(t);
  return form_of(t) == "to" && (rel == "mark" || rel == "aux");
}

bool has_to_child(const Tree& tree, std::size_t i) {
  for (auto c : tree.children(i))
    if (is_to_marker(tree.at(c))) return true;
  return false;
}

bool is_gerund(const Token& t) {
  if (t.xpos == "VBG" || has_feat(t, "VerbForm=Ger")) return true;
  const auto f = form_of(t);
  return unset(t.xpos) && t.upos == "VERB" && f.size() > 4 && f.ends_with("ing");
}

// UD: the gerund carries "for" as mark/case. spaCy: "for" (prep) -> gerund (pcomp).
bool gerund_with_for(const Tree& tree, std::size_t g) {
  if (!is_gerund(tree.at(g))) return false;
  for (auto c : tree.children(g)) {
    const auto rel = base_rel(tree.at(c));
    if (form_of(tree.at(c)) == "for" && (rel == "mark" || rel == "case")) return true;
  }
  if (base_rel(tree.at(g)) == "pcomp") {
    if (auto h = tree.head(g); h && form_of(tree.at(*h)) == "for") return true;
  }
  return false;
}

bool purpose_inside(const Tree& tree, std::size_t i) {
  if (has_to_child(tree, i) || gerund_with_for(tree, i)) return true;
  const auto h = tree.head(i);
  return h && has_to_child(tree, *h);
}

bool purpose_governing(const Tree& tree, std::size_t i) {
  for (auto c : tree.children(i)) {
    const auto& ct = tree.at(c);
    const auto rel = base_rel(ct);
    if ((rel == "advcl" || rel == "acl" || rel == "relcl") && has_to_child(tree, c)) return true;
    if (rel != "prep" && gerund_with_for(tree, c)) return true;
    if (rel == "prep" && form_of(ct) == "for") {
      for (auto g : tree.children(c))
        if (base_rel(tree.at(g)) == "pcomp" && is_gerund(tree.at(g))) return true;
    }
  }
  return false;
}

bool spatial_complement(const Tree& tree, std::size_t i, const std::set<std::string>& spatial) {
  for (auto c : tree.children(i)) {
    const auto& ct = tree.at(c);
    const auto rel = base_rel(ct);
    if (rel == "prep" && spatial.count(lemma_of(ct))) return true;
    if (rel == "obl" || rel == "nmod") {
      for (auto d : tree.children(c))
        if (base_rel(tree.at(d)) == "case" && spatial.count(lemma_of(tree.at(d)))) return true;
    }
  }
  return false;
}

bool has_modal(const Tree& tree, std::size_t i, const std::set<std::string>& modals) {
  for (auto c : tree.children(i))
    if (base_rel(tree.at(c)) == "aux" && modals.count(lemma_of(tree.at(c)))) return true;
  return false;
}

bool base_form_verb(const Token& t) {
  if (t.upos != "VERB") return false;
  if (t.xpos == "VB" || has_feat(t, "VerbForm=Inf") || has_feat(t, "Mood=Imp")) return true;
  if (unset(t.xpos) && unset(t.feats)) return lemma_of(t) == form_of(t);
  return false;
}

bool imperative(const Tree& tree, bool questions_block) {
  if (tree.size() == 0) return false;
  const std::size_t r = tree.root();
  if (!base_form_verb(tree.at(r))) return false;
  for (auto c : tree.children(r)) {
    const auto rel = base_rel(tree.at(c));
    if (rel == "nsubj" || rel == "nsubjpass" || rel == "csubj" || rel == "csubjpass" || rel == "expl")
      return false;
  }
  if (questions_block) {
    for (std::size_t i = 0; i < tree.size(); ++i)
      if (tree.at(i).upos == "PUNCT" && tree.at(i).form.find('?') != std::string::npos) return false;
  }
  for (std::size_t i = 0; i < tree.size(); ++i) {
    if (tree.at(i).upos == "PUNCT") continue;
    if (i == r) return true;
    const auto rel = text::to_lower(tree.at(i).deprel);
    return tree.at(i).head == static_cast<int>(r + 1) && (rel == "prt" || rel == "compound:prt");
  }
  return false;
}

bool second_person(const Tree& tree) {
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const auto& t = tree.at(i);
    if (lemma_of(t) == "you") return true;
    const auto f = form_of(t);
    if (f == "your" || f == "yours") return true;
  }
  return false;
}

}  // namespace

std::string_view to_string(Feature f) noexcept {
  switch (f) {
    case Feature::AsVerb: return "as_verb";
    case Feature::SecondPerson: return "second_person";
    case Feature::Modal: return "modal";
    case Feature::SpatialPrep: return "spatial_prep";
    case Feature::Imperative: return "imperative";
    case Feature::Purpose: return "purpose";
  }
  return "?";
}

std::string_view to_string(MatchOn m) noexcept { return m == MatchOn::Lemma ? "lemma" : "surface"; }

std::optional<MatchOn> parse_match_on(std::string_view s) {
  if (s == "lemma") return MatchOn::Lemma;
  if (s == "surface") return MatchOn::Surface;
  return std::nullopt;
}

std::string_view to_string(PurposeScope p) noexcept {
  switch (p) {
    case PurposeScope::Inside: return "inside";
    case PurposeScope::Governing: return "governing";
    case PurposeScope::Both: return "both";
  }
  return "both";
}

std::optional<PurposeScope> parse_purpose_scope(std::string_view s) {
  if (s == "inside") return PurposeScope::Inside;
  if (s == "governing") return PurposeScope::Governing;
  if (s == "both") return PurposeScope::Both;
  return std::nullopt;
}

const std::set<std::string>& default_modals() {
  static const std::set<std::string> s = {"can",   "could", "may",    "might", "must",
                                          "shall", "should", "will", "would"};
  return s;
}

const std::set<std::string>& default_spatial_prepositions() {
  static const std::set<std::string> s = {
      "through", "into", "onto", "across", "over",   "under",  "along",  "around", "toward",
      "towards", "past", "up",   "down",   "behind", "beside", "near",   "inside", "outside"};
  return s;
}

std::vector<Occurrence> extract_features(const ParsedSentence& sentence, const lex::Lexicon& lexicon,
                                         const SyntaxOptions& options) {
  std::vector<Occurrence> out;
  const Tree tree(sentence);
  std::optional<bool> imp, you;  // sentence-level, computed on first match
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const auto& t = tree.at(i);
    const std::string key = options.match == MatchOn::Lemma ? lemma_of(t) : form_of(t);
    if (!lexicon.contains(key)) continue;
    if (!imp) {
      imp = imperative(tree, options.questions_block_imperative);
      you = second_person(tree);
    }
    Occurrence o;
    o.sentence_id = sentence.sentence_id;
    o.token_id = t.id;
    o.term = key;
    auto& f = o.features;
    f[static_cast<std::size_t>(Feature::AsVerb)] = t.upos == "VERB" || t.upos == "AUX";
    f[static_cast<std::size_t>(Feature::SecondPerson)] = *you;
    f[static_cast<std::size_t>(Feature::Modal)] = has_modal(tree, i, options.modals);
    f[static_cast<std::size_t>(Feature::SpatialPrep)] = spatial_complement(tree, i, options.spatial);
    f[static_cast<std::size_t>(Feature::Imperative)] = *imp;
    bool purpose = false;
    if (options.purpose_scope != PurposeScope::Governing) purpose = purpose_inside(tree, i);
    if (!purpose && options.purpose_scope != PurposeScope::Inside) purpose = purpose_governing(tree, i);
    f[static_cast<std::size_t>(Feature::Purpose)] = purpose;
    out.push_back(std::move(o));
  }
  return out;
}

void FeatureCounts::add(const Occurrence& o) {
  ++total;
  for (std::size_t k = 0; k < kFeatureCount; ++k) with[k] += o.features[k] ? 1 : 0;
  ++term_occurrences[o.term];
}

FeatureCounts& FeatureCounts::operator+=(const FeatureCounts& other) {
  total += other.total;
  for (std::size_t k = 0; k < kFeatureCount; ++k) with[k] += other.with[k];
  for (const auto& [term, n] : other.term_occurrences) term_occurrences[term] += n;
  return *this;
}

FeatureCounts count_features(std::span<const ParsedSentence> sentences, const lex::Lexicon& lexicon,
                             const SyntaxOptions& options, unsigned threads) {
  std::vector<FeatureCounts> per(sentences.size());
  parallel_for(sentences.size(), threads, [&](std::size_t i) {
    for (const auto& o : extract_features(sentences[i], lexicon, options)) per[i].add(o);
  });
  FeatureCounts out;
  out.corpus_id = sentences.empty() ? "" : sentences.front().corpus_id;
  out.lexicon_category = std::string(lex::to_string(lexicon.category()));
  for (const auto& p : per) out += p;
  return out;
}

std::vector<FeatureComparison> compare_corpora(const FeatureCounts& a, const FeatureCounts& b) {
  if (a.total == 0 || b.total == 0)
    throw Error(Errc::EmptyCorpusCounts,
                "no term occurrences in " + (a.total == 0 ? a.corpus_id : b.corpus_id));
  std::vector<FeatureComparison> out;
  for (auto f : kFeatures) {
    const auto k = static_cast<std::size_t>(f);
    FeatureComparison c;
    c.feature = f;
    c.rate_a = static_cast<double>(a.with[k]) / static_cast<double>(a.total);
    c.rate_b = static_cast<double>(b.with[k]) / static_cast<double>(b.total);
    c.percent_difference = 100.0 * (c.rate_b - c.rate_a);
    const bool column_empty = a.with[k] + b.with[k] == 0 || a.without(f) + b.without(f) == 0;
    if (!column_empty) {
      const auto r = stats::chi2_2x2(a.with[k], a.without(f), b.with[k], b.without(f));
      c.chi2 = r.test.statistic;
      c.p_value = r.test.p_value;
      c.cramers_v = r.cramers_v;
    }
    out.push_back(c);
  }
  return out;
}

double matched_term_share(const std::map<std::string, std::size_t>& occurrences,
                          const lex::Lexicon& lexicon_a, const lex::Lexicon& lexicon_b) {
  for (const auto& t : lexicon_a.terms())
    if (lexicon_b.contains(t)) throw Error(Errc::OverlappingLexicons, "'" + t + "' is in both lexicons");
  std::size_t hits_a = 0, hits_b = 0;
  for (const auto& [term, n] : occurrences) {
    if (lexicon_a.contains(term)) hits_a += n;
    else if (lexicon_b.contains(term)) hits_b += n;
  }
  if (hits_a + hits_b == 0) throw Error(Errc::ZeroDenominator, "no occurrences of either lexicon");
  return static_cast<double>(hits_a) / static_cast<double>(hits_a + hits_b);
}

}  // namespace hcdeval::syntax
