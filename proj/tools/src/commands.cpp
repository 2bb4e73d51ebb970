#include "commands.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "hcdeval/calibration.hpp"
#include "hcdeval/conllu.hpp"
#include "hcdeval/corpus.hpp"
#include "hcdeval/csv.hpp"
#include "hcdeval/embedstore.hpp"
#include "hcdeval/error.hpp"
#include "hcdeval/geometry.hpp"
#include "hcdeval/lexmatch.hpp"
#include "hcdeval/report.hpp"
#include "hcdeval/stats.hpp"
#include "hcdeval/syntax.hpp"
#include "hcdeval/textmetrics.hpp"

namespace hcdeval::cli {

namespace fs = std::filesystem;

namespace {

// Every mode decision the toolkit makes, resolved for this run. Each
// subcommand overwrites the fields it controls; the rest keep defaults so
// every manifest carries the complete set.
struct Modes {
  std::string dhm_mode = "centroid";
  std::string lb_mode = "median";
  std::string ub_scope = "per-image";
  Json k_fractions = Json::array({0.1, 0.2, 0.3, 0.4, 0.5});
  std::size_t pca_components = 100;
  double epsilon = text::kDefaultWinsorEpsilon;
  std::string quantile_grid = "midpoint";
  std::string frequency_scale = "log";
  double smoothing = lex::kDefaultSmoothing;
  std::string term_match = "lemma";
  std::string purpose_scope = "both";
  bool questions_block_imperative = true;
  std::vector<std::string> modal_set{syntax::default_modals().begin(), syntax::default_modals().end()};
  std::vector<std::string> spatial_set{syntax::default_spatial_prepositions().begin(),
                                       syntax::default_spatial_prepositions().end()};
  std::size_t bootstrap_resamples = 2000;
  double bootstrap_level = 0.95;
};

Json decisions(const Modes& m, const Global& g) {
  Json j;
  j["threads"] = g.threads;
  j["seed"] = g.seed;
  j["percentile_type"] = 7;
  j["csv"] = {{"dialect", "rfc4180"}, {"line_ending", "\\n"}, {"float_format", "%.9g"}};
  j["hcd"] = {{"dhm_mode", m.dhm_mode},
              {"lb_mode", m.lb_mode},
              {"ub_scope", m.ub_scope},
              {"ub_percentile", calib::kUpperBoundPercentile},
              {"min_bounds_spread", calib::kMinBoundsSpread},
              {"centroid", "unit-renormalised mean"},
              {"distance", "cosine"}};
  j["purity"] = {{"distance", "cosine after unit normalisation"},
                 {"self_excluded", true},
                 {"tie_break", "record_id ascending"},
                 {"k_rule", "max(1, round-half-up(fraction * class size)), capped at n - 1"},
                 {"k_fractions", m.k_fractions},
                 {"pca_components_max", m.pca_components},
                 {"pca_sign", "largest-magnitude loading positive"}};
  j["textmetrics"] = {{"tokenizer", std::string(text::kTokenizerId)},
                      {"entropy_log_base", 2},
                      {"oov_tokens", "excluded from pairwise similarity"},
                      {"hedge_matching", "whole token; multi-word terms as contiguous runs"},
                      {"winsor_epsilon", m.epsilon},
                      {"sentiment_scope", "per description"},
                      {"sentiment_rules", "vader heuristics, compound x 100"}};
  j["lexmatch"] = {{"quantile_grid", m.quantile_grid},
                   {"frequency_scale", m.frequency_scale},
                   {"quantile_order", "ascending"},
                   {"tie_break", "lexicographic"},
                   {"smoothing", m.smoothing}};
  j["syntax"] = {{"term_match", m.term_match},
                 {"purpose_scope", m.purpose_scope},
                 {"questions_block_imperative", m.questions_block_imperative},
                 {"chi2_continuity_correction", false},
                 {"modal_set", m.modal_set},
                 {"spatial_set", m.spatial_set}};
  j["stats"] = {{"wilcoxon_exact_max_n", stats::kWilcoxonExactMaxN},
                {"bootstrap_resamples", m.bootstrap_resamples},
                {"bootstrap_level", m.bootstrap_level}};
  return j;
}

fs::path resolve_out(const Context& ctx, const std::string& p) {
  fs::path path(p);
  if (ctx.global.out_dir.empty() || path.is_absolute()) return path;
  return fs::path(ctx.global.out_dir) / path;
}

void emit(Context& ctx, const std::string& out, const std::string& content, const Manifest& m) {
  const fs::path path = resolve_out(ctx, out);
  write_atomic(path, content);
  if (ctx.global.manifest) write_atomic(path.string() + ".manifest.json", m.render(path, content));
}

corpus::SchemaMode parse_schema_mode(const std::string& s) {
  if (s == "strict") return corpus::SchemaMode::Strict;
  if (s == "lenient") return corpus::SchemaMode::Lenient;
  throw Error(Errc::InvalidArgument, "unknown schema mode '" + s + "'");
}

template <class T>
std::string join(const std::vector<T>& v, std::string_view sep = ", ") {
  std::ostringstream o;
  for (std::size_t i = 0; i < v.size(); ++i) o << (i ? sep : "") << v[i];
  return o.str();
}

// Reads leniently so that every violation can be reported at once; strict
// mode then fails with the aggregate.
std::vector<corpus::DescriptionRecord> load_records(const std::string& path, const std::string& mode,
                                                    Context& ctx) {
  const auto sm = parse_schema_mode(mode);
  auto res = corpus::load_corpus(path, corpus::SchemaMode::Lenient);
  if (!res.violations.empty()) {
    std::map<std::string, std::size_t> by_code;
    for (const auto& v : res.violations) ++by_code[std::string(to_string(v.code))];
    std::ostringstream msg;
    msg << path << ": " << res.violations.size() << " invalid line(s) (";
    bool first = true;
    for (const auto& [code, n] : by_code) {
      msg << (first ? "" : ", ") << code << ": " << n;
      first = false;
    }
    msg << ")";
    const std::size_t shown = std::min<std::size_t>(res.violations.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) {
      const auto& v = res.violations[i];
      msg << "\n  line " << v.line_no << ": " << to_string(v.code) << ": " << v.detail;
    }
    if (sm == corpus::SchemaMode::Strict) throw ValidationFailure(msg.str());
    ctx.err << "warning: " << msg.str() << "\n  (skipped in lenient mode)\n";
  }
  return std::move(res.records);
}

std::pair<std::string, std::string> split_embedding_arg(const std::string& arg) {
  const auto eq = arg.find('=');
  if (eq != std::string::npos && eq > 0 && arg.substr(0, eq).find('/') == std::string::npos)
    return {arg.substr(0, eq), arg.substr(eq + 1)};
  return {fs::path(arg).stem().string(), arg};
}

std::string csv_string(const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream o;
  io::CsvWriter w(o);
  for (const auto& r : rows) w.row(r);
  return o.str();
}

std::string opt_str(const std::optional<std::string>& s) { return s.value_or(""); }

}  // namespace

int run_hcd(const HcdArgs& a, Context& ctx) {
  Modes modes;
  calib::HcdOptions opt;
  opt.threads = ctx.global.threads;
  if (auto m = calib::parse_dhm_mode(a.dhm_mode)) opt.dhm_mode = *m;
  else throw Error(Errc::InvalidArgument, "unknown --dhm-mode '" + a.dhm_mode + "'");
  if (auto m = calib::parse_lb_mode(a.lb_mode)) opt.lb_mode = *m;
  else throw Error(Errc::InvalidArgument, "unknown --lb-mode '" + a.lb_mode + "'");
  if (auto m = calib::parse_ub_scope(a.ub_scope)) opt.ub_scope = *m;
  else throw Error(Errc::InvalidArgument, "unknown --ub-scope '" + a.ub_scope + "'");
  modes.dhm_mode = a.dhm_mode;
  modes.lb_mode = a.lb_mode;
  modes.ub_scope = a.ub_scope;

  Manifest m;
  m.subcommand = "hcd";
  m.inputs.push_back(a.corpus);
  const auto records = load_records(a.corpus, a.schema_mode, ctx);
  std::vector<embed::EmbeddingMatrix> mats;
  Json embedders = Json::object();
  for (const auto& arg : a.embeddings) {
    auto [id, path] = split_embedding_arg(arg);
    for (const auto& e : mats)
      if (e.embedder_id() == id) throw Error(Errc::InvalidArgument, "embedder id '" + id + "' given twice");
    mats.push_back(embed::load_embeddings(path, id));
    m.inputs.push_back(path);
    embedders[id] = path;
  }
  const auto run = calib::evaluate(records, mats, opt);

  std::vector<std::vector<std::string>> rows = {report::header(report::Schema::Hcd)};
  for (const auto& r : run.records)
    rows.push_back({r.group.image_id, r.group.task, r.group.embedder_id, opt_str(r.group.model_name),
                    opt_str(r.group.prompt_type), std::to_string(r.n_human), std::to_string(r.n_model),
                    io::format_double(r.lb), io::format_double(r.ub), io::format_double(r.d_hm),
                    io::format_double(r.hcd), std::string(calib::to_string(r.classification))});

  m.flags = {{"corpus", a.corpus}, {"embeddings", embedders}, {"dhm_mode", a.dhm_mode},
             {"lb_mode", a.lb_mode}, {"ub_scope", a.ub_scope}, {"schema_mode", a.schema_mode}};
  m.decisions = decisions(modes, ctx.global);
  m.extra["excluded_cells"] = run.excluded.size();
  emit(ctx, a.out, csv_string(rows), m);

  if (!a.bounds_out.empty()) {
    std::vector<std::vector<std::string>> b = {{"image_id", "task", "embedder_id", "n_human", "lb", "ub"}};
    for (const auto& x : run.bounds)
      b.push_back({x.group.image_id, x.group.task, x.group.embedder_id, std::to_string(x.n_humans),
                   io::format_double(x.lb), io::format_double(x.ub)});
    emit(ctx, a.bounds_out, csv_string(b), m);
  }
  if (!a.excluded_out.empty()) {
    std::vector<std::vector<std::string>> e = {
        {"image_id", "task", "embedder_id", "model_name", "prompt_type", "reason"}};
    for (const auto& x : run.excluded)
      e.push_back({x.group.image_id, x.group.task, x.group.embedder_id, opt_str(x.group.model_name),
                   opt_str(x.group.prompt_type), x.reason});
    emit(ctx, a.excluded_out, csv_string(e), m);
  }
  if (!a.failure_rates_out.empty() && !run.records.empty()) {
    const auto rates = calib::failure_rates(run.records, a.group_by);
    std::vector<std::string> head = a.group_by;
    for (const char* c : {"n", "generic_rate", "catastrophic_rate"}) head.emplace_back(c);
    std::vector<std::vector<std::string>> f = {head};
    for (const auto& x : rates) {
      auto row = x.group;
      row.push_back(std::to_string(x.n));
      row.push_back(io::format_double(x.generic_rate));
      row.push_back(io::format_double(x.catastrophic_rate));
      f.push_back(std::move(row));
    }
    emit(ctx, a.failure_rates_out, csv_string(f), m);
  }
  if (!run.excluded.empty())
    ctx.err << "note: " << run.excluded.size() << " cell(s) excluded as degenerate\n";
  ctx.out << "hcd: " << run.records.size() << " rows -> " << resolve_out(ctx, a.out).string() << "\n";
  return 0;
}

int run_purity(const PurityArgs& a, Context& ctx) {
  Modes modes;
  modes.k_fractions = a.k_fractions;
  modes.pca_components = a.pca_components;
  std::vector<geometry::LabelLevel> levels;
  if (a.level == "both") levels = {geometry::LabelLevel::Fine, geometry::LabelLevel::Coarse};
  else if (auto l = geometry::parse_label_level(a.level)) levels = {*l};
  else throw Error(Errc::InvalidArgument, "unknown --level '" + a.level + "'");

  Manifest m;
  m.subcommand = "purity";
  m.inputs = {a.corpus};
  auto records = load_records(a.corpus, a.schema_mode, ctx);
  auto [id, path] = split_embedding_arg(a.embeddings);
  const auto mat = embed::load_embeddings(path, id);
  m.inputs.push_back(path);

  // Points grouped by source: "human", or the model name.
  std::map<std::string, std::vector<const corpus::DescriptionRecord*>> sources;
  for (const auto& r : records) {
    const std::string src = r.source == corpus::Source::Human ? "human" : opt_str(r.model_name);
    sources[src].push_back(&r);
  }
  std::vector<std::vector<std::string>> rows = {report::header(report::Schema::Purity)};
  for (auto& [src, recs] : sources) {
    std::sort(recs.begin(), recs.end(), [](auto* x, auto* y) { return x->record_id < y->record_id; });
    geometry::Matrix pts(recs.size(), mat.dim());
    std::vector<std::string> ids, fine, coarse;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const auto row = mat.find(recs[i]->record_id);
      if (!row)
        throw Error(Errc::MissingEmbedding, "no vector for record '" + recs[i]->record_id + "' in " + path);
      auto v = mat.row(*row);
      std::copy(v.begin(), v.end(), pts.row(i).begin());
      ids.push_back(recs[i]->record_id);
      fine.push_back(recs[i]->task);
      coarse.emplace_back(corpus::to_string(recs[i]->task_group));
    }
    geometry::Matrix reduced = pts;
    const std::size_t k = std::min({a.pca_components, pts.rows - 1, pts.cols});
    if (a.pca_components > 0 && k >= 1) {
      auto pca = geometry::pca_reduce(pts, k);
      if (pca.rank_deficient) ctx.err << "note: " << src << ": " << pca.warning << "\n";
      reduced = std::move(pca.scores);
    }
    for (auto level : levels) {
      geometry::PurityInput in;
      in.points = &reduced;
      in.labels = level == geometry::LabelLevel::Fine ? fine : coarse;
      in.ids = ids;
      in.source_id = src;
      in.level = level;
      for (const auto& r : geometry::k_sweep(in, a.k_fractions, ctx.global.threads))
        rows.push_back({r.source_id, std::string(geometry::to_string(r.level)), io::format_double(r.k_fraction),
                        io::format_double(r.purity), std::to_string(r.n_points)});
    }
  }
  m.flags = {{"corpus", a.corpus}, {"embeddings", a.embeddings}, {"level", a.level},
             {"k_fractions", a.k_fractions}, {"pca_components", a.pca_components},
             {"schema_mode", a.schema_mode}};
  m.decisions = decisions(modes, ctx.global);
  emit(ctx, a.out, csv_string(rows), m);
  ctx.out << "purity: " << rows.size() - 1 << " rows -> " << resolve_out(ctx, a.out).string() << "\n";
  return 0;
}

int run_project2d(const Project2dArgs& a, Context& ctx) {
  Manifest m;
  m.subcommand = "project2d";
  m.inputs = {a.corpus};
  auto records = load_records(a.corpus, a.schema_mode, ctx);
  auto [id, path] = split_embedding_arg(a.embeddings);
  const auto mat = embed::load_embeddings(path, id);
  m.inputs.push_back(path);

  std::vector<std::pair<std::string, std::string>> filters;
  for (const auto& f : a.filters) {
    const auto eq = f.find('=');
    if (eq == std::string::npos) throw Error(Errc::InvalidArgument, "--filter expects field=value, got '" + f + "'");
    filters.emplace_back(f.substr(0, eq), f.substr(eq + 1));
  }
  std::vector<const corpus::DescriptionRecord*> keep;
  for (const auto& r : records) {
    bool ok = true;
    for (const auto& [field, value] : filters) ok = ok && corpus::field_value(r, field).value_or("") == value;
    if (ok) keep.push_back(&r);
  }
  std::sort(keep.begin(), keep.end(), [](auto* x, auto* y) { return x->record_id < y->record_id; });
  geometry::Matrix pts(keep.size(), mat.dim());
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const auto row = mat.find(keep[i]->record_id);
    if (!row) throw Error(Errc::MissingEmbedding, "no vector for record '" + keep[i]->record_id + "' in " + path);
    auto v = mat.row(*row);
    std::copy(v.begin(), v.end(), pts.row(i).begin());
    ids.push_back(keep[i]->record_id);
  }
  std::vector<std::vector<std::string>> rows = {report::header(report::Schema::Projection)};
  for (const auto& p : geometry::project_2d(pts, ids))
    rows.push_back({p.record_id, io::format_double(p.x), io::format_double(p.y)});
  m.flags = {{"corpus", a.corpus}, {"embeddings", a.embeddings}, {"filters", a.filters},
             {"schema_mode", a.schema_mode}};
  m.decisions = decisions(Modes{}, ctx.global);
  emit(ctx, a.out, csv_string(rows), m);
  ctx.out << "project2d: " << rows.size() - 1 << " points -> " << resolve_out(ctx, a.out).string() << "\n";
  return 0;
}

int run_nlp(const NlpArgs& a, Context& ctx) {
  Manifest m;
  m.subcommand = "nlp";
  m.inputs = {a.corpus};
  auto records = load_records(a.corpus, a.schema_mode, ctx);
  std::optional<embed::WordVectorTable> wv;
  std::optional<lex::Lexicon> hedges;
  std::optional<text::SentimentAnalyzer> sentiment;
  text::StyleResources res;
  if (!a.word_vectors.empty()) {
    wv = embed::load_word_vectors(a.word_vectors);
    res.word_vectors = &*wv;
    m.inputs.push_back(a.word_vectors);
  }
  if (!a.hedge_lexicon.empty()) {
    hedges = lex::load_lexicon(a.hedge_lexicon);
    res.hedges = &*hedges;
    m.inputs.push_back(a.hedge_lexicon);
  }
  if (!a.sentiment_lexicon.empty()) {
    sentiment.emplace(text::load_valence_lexicon(a.sentiment_lexicon));
    res.sentiment = &*sentiment;
    m.inputs.push_back(a.sentiment_lexicon);
  }
  const auto metrics = text::style_metrics(records, res, ctx.global.threads);
  std::vector<std::vector<std::string>> rows = {report::header(report::Schema::Nlp)};
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const auto& x = metrics[i];
    rows.push_back({r.record_id, r.image_id, r.task, std::string(corpus::to_string(r.task_group)),
                    std::string(corpus::to_string(r.source)), opt_str(r.model_family), opt_str(r.model_name),
                    r.prompt_type ? std::string(corpus::to_string(*r.prompt_type)) : "",
                    std::to_string(x.n_words), io::format_optional(x.entropy_bits), io::format_optional(x.ttr),
                    io::format_optional(x.mean_pairwise_sim),
                    x.hedge_hit ? (*x.hedge_hit ? "1" : "0") : "", io::format_optional(x.sentiment)});
  }
  m.flags = {{"corpus", a.corpus}, {"word_vectors", a.word_vectors}, {"hedge_lexicon", a.hedge_lexicon},
             {"sentiment_lexicon", a.sentiment_lexicon}, {"schema_mode", a.schema_mode}};
  m.decisions = decisions(Modes{}, ctx.global);
  emit(ctx, a.out, csv_string(rows), m);
  ctx.out << "nlp: " << records.size() << " records -> " << resolve_out(ctx, a.out).string() << "\n";
  return 0;
}

int run_hedge(const HedgeArgs& a, Context& ctx) {
  Modes modes;
  modes.epsilon = a.epsilon;
  Manifest m;
  m.subcommand = "hedge";
  m.inputs = {a.corpus, a.hedge_lexicon};
  auto records = load_records(a.corpus, a.schema_mode, ctx);
  const auto hedges = lex::load_lexicon(a.hedge_lexicon);
  text::logit_winsorize(0.5, a.epsilon);  // validates epsilon before any work
  std::vector<std::string> head = a.group_by;
  for (const auto& c : report::header(report::Schema::Hedge)) head.push_back(c);
  std::vector<std::vector<std::string>> rows = {head};
  for (const auto& h : text::hedge_rate(records, hedges, a.group_by)) {
    auto row = h.group;
    row.push_back(std::to_string(h.n));
    row.push_back(std::to_string(h.n_hedged));
    row.push_back(io::format_double(h.proportion));
    row.push_back(io::format_double(text::logit_winsorize(h.proportion, a.epsilon)));
    rows.push_back(std::move(row));
  }
  m.flags = {{"corpus", a.corpus}, {"hedge_lexicon", a.hedge_lexicon}, {"group_by", a.group_by},
             {"epsilon", a.epsilon}, {"schema_mode", a.schema_mode}};
  m.decisions = decisions(modes, ctx.global);
  emit(ctx, a.out, csv_string(rows), m);
  ctx.out << "hedge: " << rows.size() - 1 << " groups -> " << resolve_out(ctx, a.out).string() << "\n";
  return 0;
}

int run_lexmatch(const LexmatchArgs& a, Context& ctx) {
  Modes modes;
  lex::MatchOptions opt;
  if (auto s = lex::parse_frequency_scale(a.scale)) opt.scale = *s;
  else throw Error(Errc::InvalidArgument, "unknown --scale '" + a.scale + "'");
  if (auto g = lex::parse_quantile_grid(a.grid)) opt.grid = *g;
  else throw Error(Errc::InvalidArgument, "unknown --grid '" + a.grid + "'");
  modes.frequency_scale = a.scale;
  modes.quantile_grid = a.grid;
  modes.smoothing = a.smoothing;

  Manifest m;
  m.subcommand = "lexmatch";
  m.inputs = {a.target, a.candidates, a.ref_corpus};
  const auto target = lex::load_lexicon(a.target);
  const auto candidates = lex::load_lexicon(a.candidates);
  const auto freq = lex::load_reference_corpus(a.ref_corpus, a.tagged, a.smoothing);
  const auto result = lex::quantile_match(target, candidates, freq, a.n, opt);

  std::ostringstream terms;
  lex::write_lexicon(terms, result.lexicon);
  m.flags = {{"target", a.target}, {"candidates", a.candidates}, {"ref_corpus", a.ref_corpus}, {"n", a.n},
             {"tagged", a.tagged}, {"smoothing", a.smoothing}, {"scale", a.scale}, {"grid", a.grid}};
  m.decisions = decisions(modes, ctx.global);
  m.extra["reference_tokens"] = freq.total;
  emit(ctx, a.out, terms.str(), m);
  if (!a.steps_out.empty()) {
    std::vector<std::vector<std::string>> rows = {{"step", "q", "target_value", "term", "term_value"}};
    for (std::size_t i = 0; i < result.steps.size(); ++i) {
      const auto& s = result.steps[i];
      rows.push_back({std::to_string(i + 1), io::format_double(s.q), io::format_double(s.target_value), s.term,
                      io::format_double(s.term_value)});
    }
    emit(ctx, a.steps_out, csv_string(rows), m);
  }
  ctx.out << "lexmatch: " << result.lexicon.size() << " terms -> " << resolve_out(ctx, a.out).string() << "\n";
  return 0;
}

int run_syntax(const SyntaxArgs& a, Context& ctx) {
  Modes modes;
  syntax::SyntaxOptions opt;
  if (auto v = syntax::parse_match_on(a.match)) opt.match = *v;
  else throw Error(Errc::InvalidArgument, "unknown --match '" + a.match + "'");
  if (auto v = syntax::parse_purpose_scope(a.purpose_scope)) opt.purpose_scope = *v;
  else throw Error(Errc::InvalidArgument, "unknown --purpose-scope '" + a.purpose_scope + "'");
  opt.questions_block_imperative = !a.allow_questions;

  Manifest m;
  m.subcommand = "syntax";
  m.inputs = {a.parses, a.parses_b, a.lexicon};
  if (!a.modals.empty()) {
    const auto l = lex::load_lexicon(a.modals);
    opt.modals = {l.terms().begin(), l.terms().end()};
    m.inputs.push_back(a.modals);
  }
  if (!a.spatial.empty()) {
    const auto l = lex::load_lexicon(a.spatial);
    opt.spatial = {l.terms().begin(), l.terms().end()};
    m.inputs.push_back(a.spatial);
  }
  modes.term_match = a.match;
  modes.purpose_scope = a.purpose_scope;
  modes.questions_block_imperative = opt.questions_block_imperative;
  modes.modal_set.assign(opt.modals.begin(), opt.modals.end());
  modes.spatial_set.assign(opt.spatial.begin(), opt.spatial.end());

  const auto sm = parse_schema_mode(a.schema_mode);
  auto load = [&](const std::string& path) {
    auto res = syntax::load_conllu(path, sm);
    if (!res.skipped.empty())
      ctx.err << "warning: " << path << ": " << res.skipped.size() << " sentence(s) skipped\n";
    return res;
  };
  const auto pa = load(a.parses);
  const auto pb = load(a.parses_b);
  const auto lexicon = lex::load_lexicon(a.lexicon);
  std::optional<lex::Lexicon> lexicon_b;
  lex::Lexicon combined(lexicon.name(), lexicon.category());
  for (const auto& t : lexicon.terms()) combined.add(t);
  if (!a.lexicon_b.empty()) {
    lexicon_b = lex::load_lexicon(a.lexicon_b);
    m.inputs.push_back(a.lexicon_b);
    combined = lex::Lexicon(lexicon.name() + "+" + lexicon_b->name(), lex::Category::Custom);
    for (const auto& t : lexicon.terms()) combined.add(t);
    for (const auto& t : lexicon_b->terms()) combined.add(t);
  }
  auto ca = syntax::count_features(pa.sentences, combined, opt, ctx.global.threads);
  auto cb = syntax::count_features(pb.sentences, combined, opt, ctx.global.threads);
  const auto cmp = syntax::compare_corpora(ca, cb);
  std::vector<std::vector<std::string>> rows = {report::header(report::Schema::Syntax)};
  for (const auto& c : cmp) {
    const auto k = static_cast<std::size_t>(c.feature);
    rows.push_back({std::string(syntax::to_string(c.feature)), std::to_string(ca.with[k]), std::to_string(ca.total),
                    std::to_string(cb.with[k]), std::to_string(cb.total), io::format_double(c.rate_a),
                    io::format_double(c.rate_b), io::format_double(c.percent_difference), io::format_double(c.chi2),
                    io::format_double(c.p_value), io::format_double(c.cramers_v)});
  }
  m.flags = {{"parses", a.parses}, {"parses_b", a.parses_b}, {"lexicon", a.lexicon}, {"lexicon_b", a.lexicon_b},
             {"match", a.match}, {"purpose_scope", a.purpose_scope}, {"allow_questions", a.allow_questions},
             {"modals", a.modals}, {"spatial", a.spatial}, {"schema_mode", a.schema_mode}};
  m.decisions = decisions(modes, ctx.global);
  m.extra["skipped_sentences"] = {{"a", pa.skipped.size()}, {"b", pb.skipped.size()}};
  emit(ctx, a.out, csv_string(rows), m);

  if (!a.share_out.empty()) {
    if (!lexicon_b) throw Error(Errc::InvalidArgument, "--share-out needs --lexicon-b");
    std::vector<std::vector<std::string>> s = {{"corpus_id", "hits_lexicon", "hits_lexicon_b", "share_lexicon_b"}};
    for (const auto* c : {&ca, &cb}) {
      std::size_t ha = 0, hb = 0;
      for (const auto& [term, n] : c->term_occurrences) (lexicon.contains(term) ? ha : hb) += n;
      const std::string share =
          ha + hb == 0 ? "" : io::format_double(syntax::matched_term_share(c->term_occurrences, *lexicon_b, lexicon));
      s.push_back({c->corpus_id, std::to_string(ha), std::to_string(hb), share});
    }
    emit(ctx, a.share_out, csv_string(s), m);
  }
  if (!a.occurrences_out.empty()) {
    std::vector<std::string> head = {"corpus_id", "sentence_id", "token_id", "term"};
    for (auto f : syntax::kFeatures) head.emplace_back(syntax::to_string(f));
    std::vector<std::vector<std::string>> o = {head};
    for (const auto* p : {&pa, &pb})
      for (const auto& s : p->sentences)
        for (const auto& occ : syntax::extract_features(s, combined, opt)) {
          std::vector<std::string> row = {s.corpus_id, occ.sentence_id, std::to_string(occ.token_id), occ.term};
          for (bool b : occ.features) row.emplace_back(b ? "1" : "0");
          o.push_back(std::move(row));
        }
    emit(ctx, a.occurrences_out, csv_string(o), m);
  }
  ctx.out << "syntax: " << ca.total << " / " << cb.total << " term occurrences -> "
          << resolve_out(ctx, a.out).string() << "\n";
  return 0;
}

int run_report(const ReportArgs& a, Context& ctx) {
  Modes modes;
  modes.bootstrap_resamples = a.n_resamples;
  modes.bootstrap_level = a.level;
  Manifest m;
  m.subcommand = "report";
  std::vector<report::NamedTable> tables;
  for (const auto& in : a.inputs) {
    tables.push_back({in, io::load_csv(in)});
    m.inputs.push_back(in);
  }
  report::ReportOptions opt;
  opt.group_by = a.group_by;
  opt.n_resamples = a.n_resamples;
  opt.level = a.level;
  opt.seed = ctx.global.seed;
  opt.threads = ctx.global.threads;
  opt.human_source = a.human_source;
  const auto rep = report::build_report(tables, opt);
  m.flags = {{"inputs", a.inputs}, {"group_by", a.group_by}, {"n_resamples", a.n_resamples},
             {"level", a.level}, {"human_source", a.human_source}};
  m.decisions = decisions(modes, ctx.global);
  emit(ctx, a.out, report::render_json(rep), m);
  std::string text_out = a.text_out;
  if (text_out.empty()) text_out = fs::path(a.out).replace_extension(".txt").string();
  emit(ctx, text_out, report::render_text(rep), m);
  ctx.out << "report: " << rep.means.size() << " mean rows -> " << resolve_out(ctx, a.out).string() << "\n";
  return 0;
}

}  // namespace hcdeval::cli
