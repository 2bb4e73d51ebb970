#include "hcdeval/conllu.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>

#include "hcdeval/error.hpp"

namespace hcdeval::syntax {

namespace {

std::optional<int> parse_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    cols.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return cols;
}

struct SentenceError {
  std::size_t line_no;
  Errc code;
  std::string detail;
};

class Reader {
 public:
  Reader(const std::string& corpus_id, corpus::SchemaMode mode) : corpus_id_(corpus_id), mode_(mode) {}

  void line(std::string_view text, std::size_t line_no) {
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    if (text.find_first_not_of(" \t") == std::string_view::npos) {
      finish();
      return;
    }
    if (!open_) {
      open_ = true;
      first_line_ = line_no;
      ++ordinal_;
    }
    if (error_) return;
    if (text.front() == '#') {
      // Comments after the first word line are not valid CoNLL-U.
      if (!cur_.tokens.empty() || !cur_.passthrough.empty())
        return fail(line_no, Errc::MalformedToken, "comment inside a sentence");
      cur_.comments.emplace_back(text);
      constexpr std::string_view kSentId = "# sent_id";
      if (text.substr(0, kSentId.size()) == kSentId) {
        auto rest = text.substr(kSentId.size());
        const auto eq = rest.find('=');
        if (eq != std::string_view::npos) {
          rest = rest.substr(eq + 1);
          const auto b = rest.find_first_not_of(' ');
          cur_.sentence_id = b == std::string_view::npos ? "" : std::string(rest.substr(b));
        }
      }
      return;
    }
    const auto cols = split_tabs(text);
    if (cols.size() != 10)
      return fail(line_no, Errc::MalformedToken,
                  "expected 10 tab-separated columns, found " + std::to_string(cols.size()));
    const auto id_col = cols[0];
    if (id_col.find('-') != std::string_view::npos || id_col.find('.') != std::string_view::npos) {
      cur_.passthrough.emplace_back(cur_.tokens.size(), std::string(text));
      return;
    }
    const auto id = parse_int(id_col);
    if (!id || *id != static_cast<int>(cur_.tokens.size()) + 1)
      return fail(line_no, Errc::MalformedToken, "token id '" + std::string(id_col) + "' out of sequence");
    const auto head = parse_int(cols[6]);
    if (!head || *head < 0)
      return fail(line_no, Errc::MalformedToken, "bad head '" + std::string(cols[6]) + "'");
    for (std::size_t c : {1u, 2u, 3u, 7u})
      if (cols[c].empty()) return fail(line_no, Errc::MalformedToken, "empty column " + std::to_string(c + 1));
    Token t;
    t.id = *id;
    t.form = cols[1];
    t.lemma = cols[2];
    t.upos = cols[3];
    t.xpos = cols[4];
    t.feats = cols[5];
    t.head = *head;
    t.deprel = cols[7];
    t.deps = cols[8];
    t.misc = cols[9];
    cur_.tokens.push_back(std::move(t));
  }

  void finish() {
    if (!open_) return;
    open_ = false;
    if (!error_) validate();
    if (error_) {
      if (mode_ == corpus::SchemaMode::Strict)
        throw Error(error_->code, "line " + std::to_string(error_->line_no) + ": " + error_->detail);
      result_.skipped.push_back({error_->line_no, error_->code, error_->detail});
    } else if (!cur_.tokens.empty()) {
      if (cur_.sentence_id.empty()) cur_.sentence_id = std::to_string(ordinal_);
      cur_.corpus_id = corpus_id_;
      result_.sentences.push_back(std::move(cur_));
    }
    cur_ = ParsedSentence{};
    error_.reset();
  }

  ConlluResult take() { return std::move(result_); }

 private:
  void fail(std::size_t line_no, Errc code, std::string detail) {
    error_ = SentenceError{line_no, code, std::move(detail)};
  }

  std::string label() const {
    return cur_.sentence_id.empty() ? "#" + std::to_string(ordinal_) : cur_.sentence_id;
  }

  void validate() {
    const int n = static_cast<int>(cur_.tokens.size());
    if (n == 0) return;
    int roots = 0;
    for (const auto& t : cur_.tokens) {
      if (t.head > n)
        return fail(first_line_, Errc::MalformedToken,
                    "sentence " + label() + ": head " + std::to_string(t.head) + " out of range");
      if (t.head == 0) ++roots;
    }
    if (roots > 1) return fail(first_line_, Errc::MultipleRoots, "sentence " + label());
    // Following heads from any token must reach the root within n steps.
    for (const auto& t : cur_.tokens) {
      int at = t.id;
      int steps = 0;
      while (at != 0 && steps <= n) {
        at = cur_.tokens[static_cast<std::size_t>(at - 1)].head;
        ++steps;
      }
      if (at != 0) return fail(first_line_, Errc::CyclicHeads, "sentence " + label());
    }
  }

  std::string corpus_id_;
  corpus::SchemaMode mode_;
  ConlluResult result_;
  ParsedSentence cur_;
  std::optional<SentenceError> error_;
  bool open_ = false;
  std::size_t first_line_ = 0;
  std::size_t ordinal_ = 0;
};

}  // namespace

ConlluResult read_conllu(std::istream& in, const std::string& corpus_id, corpus::SchemaMode mode) {
  Reader reader(corpus_id, mode);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) reader.line(line, ++line_no);
  reader.finish();
  return reader.take();
}

ConlluResult load_conllu(const std::string& path, corpus::SchemaMode mode) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open " + path);
  return read_conllu(in, std::filesystem::path(path).stem().string(), mode);
}

void write_conllu(std::ostream& out, std::span<const ParsedSentence> sentences) {
  for (const auto& s : sentences) {
    for (const auto& c : s.comments) out << c << '\n';
    std::size_t pt = 0;
    for (std::size_t i = 0; i <= s.tokens.size(); ++i) {
      while (pt < s.passthrough.size() && s.passthrough[pt].first == i) out << s.passthrough[pt++].second << '\n';
      if (i == s.tokens.size()) break;
      const auto& t = s.tokens[i];
      out << t.id << '\t' << t.form << '\t' << t.lemma << '\t' << t.upos << '\t' << t.xpos << '\t'
          << t.feats << '\t' << t.head << '\t' << t.deprel << '\t' << t.deps << '\t' << t.misc << '\n';
    }
    out << '\n';
  }
}

}  // namespace hcdeval::syntax
