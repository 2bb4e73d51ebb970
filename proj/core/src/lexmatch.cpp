#include "hcdeval/lexmatch.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "hcdeval/error.hpp"
#include "hcdeval/stats.hpp"
#include "hcdeval/tokenize.hpp"

namespace hcdeval::lex {

double FrequencyTable::count(const std::string& term) const {
  auto it = counts.find(term);
  return it == counts.end() ? 0.0 : it->second;
}

double FrequencyTable::relative_frequency(const std::string& term) const {
  auto it = counts.find(term);
  return (it == counts.end() ? smoothing : it->second) / total;
}

FrequencyTable build_frequency_table(std::span<const std::string> tokens, double smoothing) {
  if (tokens.empty()) throw Error(Errc::EmptyCorpus, "reference corpus has no tokens");
  if (!(smoothing > 0.0)) throw Error(Errc::InvalidArgument, "smoothing must be positive");
  FrequencyTable t;
  t.smoothing = smoothing;
  for (const auto& tok : tokens) t.counts[tok] += 1.0;
  t.total = static_cast<double>(tokens.size());
  return t;
}

FrequencyTable read_reference_corpus(std::istream& in, bool tagged, double smoothing) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (tagged) {
      std::istringstream items(line);
      std::string item, plain;
      while (items >> item) {
        const auto slash = item.rfind('/');
        if (!plain.empty()) plain.push_back(' ');
        plain += slash == std::string::npos || slash == 0 ? item : item.substr(0, slash);
      }
      line = std::move(plain);
    }
    auto toks = text::tokenize(line).tokens;
    tokens.insert(tokens.end(), std::make_move_iterator(toks.begin()),
                  std::make_move_iterator(toks.end()));
  }
  return build_frequency_table(tokens, smoothing);
}

FrequencyTable load_reference_corpus(const std::string& path, bool tagged, double smoothing) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open " + path);
  return read_reference_corpus(in, tagged, smoothing);
}

std::string_view to_string(FrequencyScale s) noexcept { return s == FrequencyScale::Log ? "log" : "raw"; }

std::optional<FrequencyScale> parse_frequency_scale(std::string_view s) {
  if (s == "log") return FrequencyScale::Log;
  if (s == "raw") return FrequencyScale::Raw;
  return std::nullopt;
}

std::string_view to_string(QuantileGrid g) noexcept {
  return g == QuantileGrid::Midpoint ? "midpoint" : "endpoints";
}

std::optional<QuantileGrid> parse_quantile_grid(std::string_view s) {
  if (s == "midpoint") return QuantileGrid::Midpoint;
  if (s == "endpoints") return QuantileGrid::Endpoints;
  return std::nullopt;
}

double scaled_frequency(const FrequencyTable& freq, const std::string& term, FrequencyScale scale) {
  const double rf = freq.relative_frequency(term);
  return scale == FrequencyScale::Log ? std::log(rf) : rf;
}

MatchResult quantile_match(const Lexicon& target, const Lexicon& candidates,
                           const FrequencyTable& freq, std::size_t out_size,
                           const MatchOptions& options) {
  if (target.empty()) throw Error(Errc::EmptyTarget, "target lexicon is empty");
  if (out_size == 0) throw Error(Errc::InvalidArgument, "output size must be at least 1");
  if (out_size > candidates.size())
    throw Error(Errc::PoolExhausted, "need " + std::to_string(out_size) + " terms but the pool has " +
                                         std::to_string(candidates.size()));

  std::vector<double> target_values;
  for (const auto& t : target.terms()) target_values.push_back(scaled_frequency(freq, t, options.scale));
  std::sort(target_values.begin(), target_values.end());

  struct Candidate {
    std::string term;
    double value;
    bool used = false;
  };
  std::vector<Candidate> pool;
  for (const auto& c : candidates.terms()) pool.push_back({c, scaled_frequency(freq, c, options.scale)});
  std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) { return a.term < b.term; });

  MatchResult out;
  out.lexicon = Lexicon(target.name() + "_matched", candidates.category());
  const double n = static_cast<double>(out_size);
  for (std::size_t j = 1; j <= out_size; ++j) {
    double q = 0.5;
    if (options.grid == QuantileGrid::Midpoint) q = (static_cast<double>(j) - 0.5) / n;
    else if (out_size > 1) q = static_cast<double>(j - 1) / (n - 1.0);
    const double f = stats::percentile_sorted(target_values, q);

    // pool is in term order, so a strict comparison keeps the smaller term on ties
    Candidate* best = nullptr;
    double best_gap = 0.0;
    for (auto& c : pool) {
      if (c.used) continue;
      const double gap = std::abs(c.value - f);
      if (best == nullptr || gap < best_gap) {
        best = &c;
        best_gap = gap;
      }
    }
    best->used = true;
    out.lexicon.add(best->term);
    out.steps.push_back({q, f, best->term, best->value});
  }
  return out;
}

}  // namespace hcdeval::lex
