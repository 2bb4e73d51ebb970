#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hcdeval/corpus.hpp"

namespace hcdeval::syntax {

struct Token {
  int id = 0;
  std::string form;
  std::string lemma;
  std::string upos;
  std::string xpos;
  std::string feats;
  int head = 0;  // 0 = root
  std::string deprel;
  std::string deps;
  std::string misc;

  bool operator==(const Token&) const = default;
};

struct ParsedSentence {
  std::string sentence_id;  // "# sent_id" value, else 1-based position in the file
  std::string corpus_id;
  std::vector<std::string> comments;  // verbatim, including the leading '#'
  std::vector<Token> tokens;          // word lines only, ids 1..n
  // Multiword-token and empty-node lines, kept verbatim for round trips;
  // first = number of word tokens that precede the line.
  std::vector<std::pair<std::size_t, std::string>> passthrough;

  bool operator==(const ParsedSentence&) const = default;
};

struct ConlluResult {
  std::vector<ParsedSentence> sentences;
  std::vector<corpus::Violation> skipped;  // lenient mode only
};

/// Blank lines separate sentences; '#' lines are comments. Each sentence must
/// have ids 1..n, heads in [0, n], exactly one root and no cycles.
/// Strict mode throws MalformedToken, MultipleRoots or CyclicHeads; lenient
/// mode drops the sentence and records why.
ConlluResult read_conllu(std::istream& in, const std::string& corpus_id,
                         corpus::SchemaMode mode = corpus::SchemaMode::Strict);
ConlluResult load_conllu(const std::string& path,
                         corpus::SchemaMode mode = corpus::SchemaMode::Strict);

void write_conllu(std::ostream& out, std::span<const ParsedSentence> sentences);

}  // namespace hcdeval::syntax
