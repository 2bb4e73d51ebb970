#include "cli.hpp"

#include <CLI11.hpp>

#include "commands.hpp"
#include "hcdeval/error.hpp"
#include "hcdeval/version.hpp"

namespace hcdeval::cli {

namespace {

const std::vector<std::string> kSchemaModes = {"strict", "lenient"};

void add_schema_mode(CLI::App* sub, std::string& target) {
  sub->add_option("--schema-mode", target, "Corpus validation: strict fails on any bad line")
      ->check(CLI::IsMember(kSchemaModes))
      ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Human-calibrated evaluation of image descriptions", "hcdeval"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Global global;
  bool no_manifest = false;
  app.add_option("--threads", global.threads, "Worker threads")
      ->envname("HCD_EVAL_THREADS")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  app.add_option("--seed", global.seed, "Seed for resampling")->capture_default_str();
  app.add_option("--out-dir", global.out_dir, "Directory for relative output paths");
  auto* manifest_flag = app.add_flag("--manifest", "Write a manifest beside every output (default)");
  app.add_flag("--no-manifest", no_manifest, "Skip manifests")->excludes(manifest_flag);

  HcdArgs hcd;
  auto* s_hcd = app.add_subcommand("hcd", "Per-image calibrated distance of model descriptions");
  s_hcd->fallthrough();
  s_hcd->add_option("--corpus", hcd.corpus, "Description corpus (JSONL)")->required()->check(CLI::ExistingFile);
  s_hcd->add_option("--embeddings", hcd.embeddings, "EMB1 file, optionally as id=path (repeatable)")->required();
  s_hcd->add_option("--dhm-mode", hcd.dhm_mode)->check(CLI::IsMember({"centroid", "pairwise"}))->capture_default_str();
  s_hcd->add_option("--lb-mode", hcd.lb_mode)->check(CLI::IsMember({"median", "mean"}))->capture_default_str();
  s_hcd->add_option("--ub-scope", hcd.ub_scope)->check(CLI::IsMember({"per-image", "global"}))->capture_default_str();
  s_hcd->add_option("--out", hcd.out)->capture_default_str();
  s_hcd->add_option("--bounds-out", hcd.bounds_out, "Also write per-image bounds");
  s_hcd->add_option("--excluded-out", hcd.excluded_out, "Also write excluded cells with reasons");
  s_hcd->add_option("--failure-rates-out", hcd.failure_rates_out, "Also write failure rates");
  s_hcd->add_option("--group-by", hcd.group_by, "Grouping for failure rates")->delimiter(',')->capture_default_str();
  add_schema_mode(s_hcd, hcd.schema_mode);

  PurityArgs purity;
  auto* s_purity = app.add_subcommand("purity", "kNN label purity per source over a k sweep");
  s_purity->fallthrough();
  s_purity->add_option("--corpus", purity.corpus)->required()->check(CLI::ExistingFile);
  s_purity->add_option("--embeddings", purity.embeddings, "EMB1 file, optionally as id=path")->required();
  s_purity->add_option("--level", purity.level)->check(CLI::IsMember({"fine", "coarse", "both"}))->capture_default_str();
  s_purity->add_option("--k-fractions", purity.k_fractions)->delimiter(',')->capture_default_str();
  s_purity->add_option("--pca-components", purity.pca_components, "Upper limit; 0 disables PCA")->capture_default_str();
  s_purity->add_option("--out", purity.out)->capture_default_str();
  add_schema_mode(s_purity, purity.schema_mode);

  Project2dArgs proj;
  auto* s_proj = app.add_subcommand("project2d", "First two principal coordinates");
  s_proj->fallthrough();
  s_proj->add_option("--corpus", proj.corpus)->required()->check(CLI::ExistingFile);
  s_proj->add_option("--embeddings", proj.embeddings)->required();
  s_proj->add_option("--filter", proj.filters, "Keep records with field=value (repeatable)");
  s_proj->add_option("--out", proj.out)->capture_default_str();
  add_schema_mode(s_proj, proj.schema_mode);

  NlpArgs nlp;
  auto* s_nlp = app.add_subcommand("nlp", "Per-description length, entropy, TTR, similarity, hedging, sentiment");
  s_nlp->fallthrough();
  s_nlp->add_option("--corpus", nlp.corpus)->required()->check(CLI::ExistingFile);
  s_nlp->add_option("--word-vectors", nlp.word_vectors)->check(CLI::ExistingFile);
  s_nlp->add_option("--hedge-lexicon", nlp.hedge_lexicon)->check(CLI::ExistingFile);
  s_nlp->add_option("--sentiment-lexicon", nlp.sentiment_lexicon)->check(CLI::ExistingFile);
  s_nlp->add_option("--out", nlp.out)->capture_default_str();
  add_schema_mode(s_nlp, nlp.schema_mode);

  HedgeArgs hedge;
  auto* s_hedge = app.add_subcommand("hedge", "Hedging rate per group with winsorised logits");
  s_hedge->fallthrough();
  s_hedge->add_option("--corpus", hedge.corpus)->required()->check(CLI::ExistingFile);
  s_hedge->add_option("--hedge-lexicon", hedge.hedge_lexicon)->required()->check(CLI::ExistingFile);
  s_hedge->add_option("--group-by", hedge.group_by)->delimiter(',')->capture_default_str();
  s_hedge->add_option("--epsilon", hedge.epsilon, "Winsorisation bound")->capture_default_str();
  s_hedge->add_option("--out", hedge.out)->capture_default_str();
  add_schema_mode(s_hedge, hedge.schema_mode);

  LexmatchArgs lm;
  auto* s_lm = app.add_subcommand("lexmatch", "Frequency-quantile matched lexicon");
  s_lm->fallthrough();
  s_lm->add_option("--target", lm.target)->required()->check(CLI::ExistingFile);
  s_lm->add_option("--candidates", lm.candidates)->required()->check(CLI::ExistingFile);
  s_lm->add_option("--ref-corpus", lm.ref_corpus)->required()->check(CLI::ExistingFile);
  s_lm->add_option("--n", lm.n, "Output size")->capture_default_str();
  s_lm->add_flag("--tagged", lm.tagged, "Reference corpus is word/TAG formatted");
  s_lm->add_option("--smoothing", lm.smoothing, "Count assumed for unseen terms")->capture_default_str();
  s_lm->add_option("--scale", lm.scale)->check(CLI::IsMember({"log", "raw"}))->capture_default_str();
  s_lm->add_option("--grid", lm.grid)->check(CLI::IsMember({"midpoint", "endpoints"}))->capture_default_str();
  s_lm->add_option("--out", lm.out)->capture_default_str();
  s_lm->add_option("--steps-out", lm.steps_out, "Also write the selection trace");

  SyntaxArgs syn;
  auto* s_syn = app.add_subcommand("syntax", "Construction features of lexicon terms in two parsed corpora");
  s_syn->fallthrough();
  s_syn->add_option("--parses", syn.parses)->required()->check(CLI::ExistingFile);
  s_syn->add_option("--parses-b", syn.parses_b)->required()->check(CLI::ExistingFile);
  s_syn->add_option("--lexicon", syn.lexicon)->required()->check(CLI::ExistingFile);
  s_syn->add_option("--lexicon-b", syn.lexicon_b)->check(CLI::ExistingFile);
  s_syn->add_option("--match", syn.match)->check(CLI::IsMember({"lemma", "surface"}))->capture_default_str();
  s_syn->add_option("--purpose-scope", syn.purpose_scope)
      ->check(CLI::IsMember({"inside", "governing", "both"}))
      ->capture_default_str();
  s_syn->add_flag("--allow-questions", syn.allow_questions, "Let '?' sentences count as imperative");
  s_syn->add_option("--modals", syn.modals, "Modal lemma list")->check(CLI::ExistingFile);
  s_syn->add_option("--spatial", syn.spatial, "Spatial preposition list")->check(CLI::ExistingFile);
  s_syn->add_option("--out", syn.out)->capture_default_str();
  s_syn->add_option("--share-out", syn.share_out, "Also write lexicon shares per corpus");
  s_syn->add_option("--occurrences-out", syn.occurrences_out, "Also write per-occurrence features");
  add_schema_mode(s_syn, syn.schema_mode);

  ReportArgs rep;
  auto* s_rep = app.add_subcommand("report", "Summaries over result tables");
  s_rep->fallthrough();
  s_rep->add_option("--inputs", rep.inputs)->required()->check(CLI::ExistingFile);
  s_rep->add_option("--group-by", rep.group_by)->delimiter(',');
  s_rep->add_option("--n-resamples", rep.n_resamples)->check(CLI::PositiveNumber)->capture_default_str();
  s_rep->add_option("--level", rep.level)->check(CLI::Range(0.5, 0.999))->capture_default_str();
  s_rep->add_option("--human-source", rep.human_source)->capture_default_str();
  s_rep->add_option("--out", rep.out)->capture_default_str();
  s_rep->add_option("--text-out", rep.text_out, "Defaults to --out with a .txt extension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  global.manifest = !no_manifest;

  Context ctx{global, out, err};
  try {
    if (*s_hcd) return run_hcd(hcd, ctx);
    if (*s_purity) return run_purity(purity, ctx);
    if (*s_proj) return run_project2d(proj, ctx);
    if (*s_nlp) return run_nlp(nlp, ctx);
    if (*s_hedge) return run_hedge(hedge, ctx);
    if (*s_lm) return run_lexmatch(lm, ctx);
    if (*s_syn) return run_syntax(syn, ctx);
    if (*s_rep) return run_report(rep, ctx);
  } catch (const ValidationFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}

}  // namespace hcdeval::cli
