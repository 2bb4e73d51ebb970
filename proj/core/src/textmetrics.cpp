#include "hcdeval/textmetrics.hpp"

#include <cmath>
#include <map>
#include <unordered_set>

#include "hcdeval/error.hpp"
#include "hcdeval/parallel.hpp"

namespace hcdeval::text {

double lexical_entropy(std::span<const std::string> tokens) {
  if (tokens.empty()) throw Error(Errc::EmptyText, "entropy of an empty token list");
  // Ordered map keeps the summation order independent of hashing.
  std::map<std::string_view, std::size_t> counts;
  for (const auto& t : tokens) ++counts[t];
  const double n = static_cast<double>(tokens.size());
  double h = 0.0;
  for (const auto& [_, c] : counts) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return h == 0.0 ? 0.0 : h;  // no -0
}

double type_token_ratio(std::span<const std::string> tokens) {
  if (tokens.empty()) throw Error(Errc::EmptyText, "type-token ratio of an empty token list");
  std::unordered_set<std::string_view> types(tokens.begin(), tokens.end());
  return static_cast<double>(types.size()) / static_cast<double>(tokens.size());
}

std::optional<double> mean_pairwise_similarity(std::span<const std::string> tokens,
                                               const embed::WordVectorTable& wv) {
  std::vector<embed::Vector> unit;
  for (const auto& t : tokens) {
    const auto* v = wv.find(t);
    if (v == nullptr) continue;
    const double norm = embed::l2_norm(*v);
    if (!(norm > 0.0)) continue;
    embed::Vector u(*v);
    for (auto& x : u) x /= norm;
    unit.push_back(std::move(u));
  }
  if (unit.size() < 2) return std::nullopt;
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < unit.size(); ++i)
    for (std::size_t j = i + 1; j < unit.size(); ++j) {
      sum += embed::dot(unit[i], unit[j]);
      ++pairs;
    }
  return std::clamp(sum / static_cast<double>(pairs), -1.0, 1.0);
}

bool contains_hedge(std::span<const std::string> tokens, const lex::Lexicon& hedges) {
  std::unordered_set<std::string_view> present(tokens.begin(), tokens.end());
  for (const auto& term : hedges.terms()) {
    const auto parts = tokenize(term).tokens;
    if (parts.empty()) continue;
    if (parts.size() == 1) {
      if (present.count(parts.front())) return true;
      continue;
    }
    if (tokens.size() < parts.size()) continue;
    for (std::size_t i = 0; i + parts.size() <= tokens.size(); ++i) {
      bool ok = true;
      for (std::size_t k = 0; k < parts.size() && ok; ++k) ok = tokens[i + k] == parts[k];
      if (ok) return true;
    }
  }
  return false;
}

std::vector<HedgeRate> hedge_rate(std::span<const corpus::DescriptionRecord> records,
                                  const lex::Lexicon& hedges,
                                  std::span<const std::string> group_by) {
  if (hedges.empty()) throw Error(Errc::EmptyLexicon, "hedge lexicon is empty");
  std::vector<HedgeRate> out;
  for (const auto& [key, cell] : corpus::partition(records, group_by)) {
    HedgeRate r;
    r.group = key;
    r.n = cell.size();
    for (const auto& rec : cell)
      if (contains_hedge(tokenize(rec.text).tokens, hedges)) ++r.n_hedged;
    r.proportion = static_cast<double>(r.n_hedged) / static_cast<double>(r.n);
    out.push_back(std::move(r));
  }
  return out;
}

double logit_winsorize(double p, double eps) {
  if (!(eps > 0.0 && eps < 0.5))
    throw Error(Errc::BadEpsilon, "epsilon must lie in (0, 0.5), got " + std::to_string(eps));
  if (!(p >= 0.0 && p <= 1.0))
    throw Error(Errc::InvalidArgument, "proportion must lie in [0, 1], got " + std::to_string(p));
  // Work on the smaller tail so the clamp at 1 - eps stays exact.
  if (p > 0.5) return -logit_winsorize(1.0 - p, eps);
  const double q = std::max(p, eps);
  return std::log(q / (1.0 - q));
}

StyleMetrics style_metrics(const corpus::DescriptionRecord& record, const StyleResources& res) {
  StyleMetrics m;
  m.record_id = record.record_id;
  const auto tok = tokenize(record.text, record.record_id);
  m.n_words = tok.tokens.size();
  if (!tok.tokens.empty()) {
    m.entropy_bits = lexical_entropy(tok.tokens);
    m.ttr = type_token_ratio(tok.tokens);
  }
  if (res.word_vectors) m.mean_pairwise_sim = mean_pairwise_similarity(tok.tokens, *res.word_vectors);
  if (res.hedges) m.hedge_hit = contains_hedge(tok.tokens, *res.hedges);
  if (res.sentiment) m.sentiment = res.sentiment->score(record.text);
  return m;
}

std::vector<StyleMetrics> style_metrics(std::span<const corpus::DescriptionRecord> records,
                                        const StyleResources& res, unsigned threads) {
  std::vector<StyleMetrics> out(records.size());
  parallel_for(records.size(), threads,
               [&](std::size_t i) { out[i] = style_metrics(records[i], res); });
  return out;
}

}  // namespace hcdeval::text
