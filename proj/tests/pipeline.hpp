#pragma once

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace testsupport {

// Output files of run_pipeline(), relative to its output directory.
inline const std::vector<std::string>& pipeline_outputs() {
  static const std::vector<std::string> files = {
      "hcd.csv",        "bounds.csv",      "excluded.csv",    "failure_rates.csv", "purity.csv",
      "projection.csv", "nlp.csv",         "hedge.csv",       "matched.txt",       "lexmatch_steps.csv",
      "syntax.csv",     "share.csv",       "occurrences.csv", "report.json",       "report.txt"};
  return files;
}

inline std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

// Exit status of a shell command, or -1 when it did not exit normally.
inline int run_command(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
  if (rc == -1 || !WIFEXITED(rc)) return -1;
  return WEXITSTATUS(rc);
}

// Runs every subcommand over the bundled fixture. Returns the first non-zero
// exit status, or 0.
inline int run_pipeline(const std::string& cli, const std::string& data, const std::string& out_dir,
                        int threads, bool manifests = false) {
  std::filesystem::remove_all(out_dir);
  std::filesystem::create_directories(out_dir);
  const std::string fx = data + "/fixture/";
  const std::string base = shell_quote(cli) + " --threads " + std::to_string(threads) + " --seed 7 --out-dir " +
                           shell_quote(out_dir) + (manifests ? "" : " --no-manifest") + " ";
  const std::string quiet = " > " + shell_quote(out_dir + "/log.txt") + " 2>&1";
  const std::string corpus = " --corpus " + shell_quote(fx + "corpus.jsonl");
  const std::vector<std::string> steps = {
      "hcd" + corpus + " --embeddings " + shell_quote("mini8=" + fx + "mini8.emb1") + " --embeddings " +
          shell_quote("alt8=" + fx + "alt8.emb1") +
          " --out hcd.csv --bounds-out bounds.csv --excluded-out excluded.csv"
          " --failure-rates-out failure_rates.csv",
      "purity" + corpus + " --embeddings " + shell_quote(fx + "mini8.emb1") + " --pca-components 4 --out purity.csv",
      "project2d" + corpus + " --embeddings " + shell_quote(fx + "mini8.emb1") + " --out projection.csv",
      "nlp" + corpus + " --word-vectors " + shell_quote(fx + "words4.vec") + " --hedge-lexicon " +
          shell_quote(data + "/lexicons/hedges_test.txt") + " --sentiment-lexicon " +
          shell_quote(data + "/lexicons/valence_test.txt") + " --out nlp.csv",
      "hedge" + corpus + " --hedge-lexicon " + shell_quote(data + "/lexicons/hedges_test.txt") + " --out hedge.csv",
      "lexmatch --target " + shell_quote(data + "/lexmatch/target.txt") + " --candidates " +
          shell_quote(data + "/lexmatch/candidates.txt") + " --ref-corpus " +
          shell_quote(data + "/lexmatch/reference_tagged.txt") +
          " --tagged --n 20 --out matched.txt --steps-out lexmatch_steps.csv",
      "syntax --parses " + shell_quote(data + "/syntax/part_a.conllu") + " --parses-b " +
          shell_quote(data + "/syntax/part_b.conllu") + " --lexicon " +
          shell_quote(data + "/syntax/affordance_verbs.txt") + " --lexicon-b " +
          shell_quote(data + "/syntax/affect_terms.txt") +
          " --out syntax.csv --share-out share.csv --occurrences-out occurrences.csv",
  };
  for (const auto& s : steps) {
    const int rc = run_command(base + s + quiet);
    if (rc != 0) return rc == -1 ? 127 : rc;
  }
  // Relative input names keep the report independent of out_dir.
  const int rc = run_command("cd " + shell_quote(out_dir) + " && " + base +
                             "report --inputs hcd.csv --inputs nlp.csv --inputs hedge.csv"
                             " --inputs purity.csv --inputs syntax.csv --n-resamples 500 --out report.json" +
                             quiet);
  return rc == -1 ? 127 : rc;
}

}  // namespace testsupport
