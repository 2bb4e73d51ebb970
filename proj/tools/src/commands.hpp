#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "output.hpp"

namespace hcdeval::cli {

struct Global {
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::string out_dir;
  bool manifest = true;
};

struct Context {
  Global global;
  std::ostream& out;
  std::ostream& err;
};

/// Aggregated input problems (strict-mode schema violations and the like).
class ValidationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HcdArgs {
  std::string corpus;
  std::vector<std::string> embeddings;  // "id=path" or "path"
  std::string dhm_mode = "centroid";
  std::string lb_mode = "median";
  std::string ub_scope = "per-image";
  std::string schema_mode = "strict";
  std::string out = "hcd.csv";
  std::string bounds_out;
  std::string excluded_out;
  std::string failure_rates_out;
  std::vector<std::string> group_by = {"model_name"};
};

struct PurityArgs {
  std::string corpus;
  std::string embeddings;
  std::string level = "both";
  std::vector<double> k_fractions = {0.1, 0.2, 0.3, 0.4, 0.5};
  std::size_t pca_components = 100;
  std::string schema_mode = "strict";
  std::string out = "purity.csv";
};

struct Project2dArgs {
  std::string corpus;
  std::string embeddings;
  std::vector<std::string> filters;  // field=value
  std::string schema_mode = "strict";
  std::string out = "projection.csv";
};

struct NlpArgs {
  std::string corpus;
  std::string word_vectors;
  std::string hedge_lexicon;
  std::string sentiment_lexicon;
  std::string schema_mode = "strict";
  std::string out = "metrics.csv";
};

struct HedgeArgs {
  std::string corpus;
  std::string hedge_lexicon;
  std::vector<std::string> group_by = {"source", "model_name"};
  double epsilon = 1e-5;
  std::string schema_mode = "strict";
  std::string out = "hedge.csv";
};

struct LexmatchArgs {
  std::string target;
  std::string candidates;
  std::string ref_corpus;
  std::size_t n = 40;
  bool tagged = false;
  double smoothing = 0.5;
  std::string scale = "log";
  std::string grid = "midpoint";
  std::string out = "matched.txt";
  std::string steps_out;
};

struct SyntaxArgs {
  std::string parses;
  std::string parses_b;
  std::string lexicon;
  std::string lexicon_b;
  std::string match = "lemma";
  std::string purpose_scope = "both";
  bool allow_questions = false;
  std::string modals;
  std::string spatial;
  std::string schema_mode = "strict";
  std::string out = "syntax.csv";
  std::string share_out;
  std::string occurrences_out;
};

struct ReportArgs {
  std::vector<std::string> inputs;
  std::vector<std::string> group_by;
  std::size_t n_resamples = 2000;
  double level = 0.95;
  std::string human_source = "human";
  std::string out = "report.json";
  std::string text_out;
};

int run_hcd(const HcdArgs& a, Context& ctx);
int run_purity(const PurityArgs& a, Context& ctx);
int run_project2d(const Project2dArgs& a, Context& ctx);
int run_nlp(const NlpArgs& a, Context& ctx);
int run_hedge(const HedgeArgs& a, Context& ctx);
int run_lexmatch(const LexmatchArgs& a, Context& ctx);
int run_syntax(const SyntaxArgs& a, Context& ctx);
int run_report(const ReportArgs& a, Context& ctx);

}  // namespace hcdeval::cli
