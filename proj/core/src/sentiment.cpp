#include "hcdeval/sentiment.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <unordered_set>
#include <vector>

#include "hcdeval/error.hpp"
#include "hcdeval/tokenize.hpp"

namespace hcdeval::text {

namespace {

constexpr double kBoosterIncrement = 0.293;
constexpr double kBoosterDecrement = -0.293;
constexpr double kCapsIncrement = 0.733;
constexpr double kNegationScalar = -0.74;
constexpr double kNormalisationAlpha = 15.0;

const std::unordered_set<std::string>& negations() {
  static const std::unordered_set<std::string> words = {
      "aint",     "arent",    "cannot",   "cant",     "couldnt",  "darent",   "didnt",
      "doesnt",   "ain't",    "aren't",   "can't",    "couldn't", "daren't",  "didn't",
      "doesn't",  "dont",     "hadnt",    "hasnt",    "havent",   "isnt",     "mightnt",
      "mustnt",   "neither",  "don't",    "hadn't",   "hasn't",   "haven't",  "isn't",
      "mightn't", "mustn't",  "neednt",   "needn't",  "never",    "none",     "nope",
      "nor",      "not",      "nothing",  "nowhere",  "oughtnt",  "shant",    "shouldnt",
      "uhuh",     "wasnt",    "werent",   "oughtn't", "shan't",   "shouldn't", "uh-uh",
      "wasn't",   "weren't",  "without",  "wont",     "wouldnt",  "won't",    "wouldn't",
      "rarely",   "seldom",   "despite"};
  return words;
}

const std::unordered_map<std::string, double>& boosters() {
  static const std::unordered_map<std::string, double> words = [] {
    std::unordered_map<std::string, double> m;
    for (const char* w :
         {"absolutely", "amazingly", "awfully", "completely", "considerably", "decidedly",
          "deeply", "effing", "enormously", "entirely", "especially", "exceptionally",
          "extremely", "fabulously", "flipping", "flippin", "fricking", "frickin", "frigging",
          "friggin", "fully", "fucking", "greatly", "hella", "highly", "hugely", "incredibly",
          "intensely", "majorly", "more", "most", "particularly", "purely", "quite", "really",
          "remarkably", "so", "substantially", "thoroughly", "totally", "tremendously", "uber",
          "unbelievably", "unusually", "utterly", "very"})
      m.emplace(w, kBoosterIncrement);
    for (const char* w : {"almost", "barely", "hardly", "just enough", "kind of", "kinda",
                          "kindof", "kind-of", "less", "little", "marginally", "occasionally",
                          "partly", "scarcely", "slightly", "somewhat", "sort of", "sorta",
                          "sortof", "sort-of"})
      m.emplace(w, kBoosterDecrement);
    return m;
  }();
  return words;
}

const std::unordered_map<std::string, double>& idioms() {
  static const std::unordered_map<std::string, double> m = {
      {"the shit", 3.0},          {"the bomb", 3.0},        {"bad ass", 1.5},
      {"yeah right", -2.0},       {"cut the mustard", 2.0}, {"kiss of death", -1.5},
      {"hand to mouth", -2.0}};
  return m;
}

constexpr std::array<std::u32string_view, 17> kPunctuation = {
    U".", U"!", U"?", U",", U";", U":", U"-", U"'", U"\"",
    U"!!", U"!!!", U"??", U"???", U"?!?", U"!?!", U"?!?!", U"!?!?"};

bool is_space(char32_t c) {
  return c == ' ' || (c >= 0x09 && c <= 0x0D) || (c >= 0x1C && c <= 0x1F) || c == 0x85 ||
         c == 0xA0 || c == 0x1680 || (c >= 0x2000 && c <= 0x200A) || c == 0x2028 ||
         c == 0x2029 || c == 0x202F || c == 0x205F || c == 0x3000;
}

bool is_ascii_punct(char32_t c) {
  return (c >= 0x21 && c <= 0x2F) || (c >= 0x3A && c <= 0x40) || (c >= 0x5B && c <= 0x60) ||
         (c >= 0x7B && c <= 0x7E);
}

bool is_lower_cp(char32_t c) {
  if (c >= 'a' && c <= 'z') return true;
  if (c >= 0xDF && c <= 0xFF) return c != 0xF7;
  if (c >= 0x101 && c <= 0x17F) return fold_case(c - 1) == c;
  if (c >= 0x3AC && c <= 0x3CE) return true;
  return c >= 0x430 && c <= 0x45F;
}

// str.isupper(): at least one cased character and none of them lowercase.
bool is_upper_word(std::u32string_view w) {
  bool cased = false;
  for (char32_t c : w) {
    if (is_lower_cp(c)) return false;
    if (fold_case(c) != c) cased = true;
  }
  return cased;
}

std::vector<std::u32string> split_ws(std::u32string_view s) {
  std::vector<std::u32string> out;
  std::u32string cur;
  for (char32_t c : s) {
    if (is_space(c)) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

struct Word {
  std::string text;   // as written, minus one stripped punctuation affix
  std::string lower;  // lowercased
  bool upper = false;
};

// Whitespace split, drop single characters, then strip a leading or trailing
// punctuation run when what remains is a punctuation-free word of the text.
std::vector<Word> words_and_emoticons(std::u32string_view text) {
  std::u32string stripped;
  for (char32_t c : text)
    if (!is_ascii_punct(c)) stripped.push_back(c);
  std::unordered_set<std::u32string> bare;
  for (auto& w : split_ws(stripped))
    if (w.size() > 1) bare.insert(std::move(w));

  std::vector<Word> out;
  for (auto& we : split_ws(text)) {
    if (we.size() <= 1) continue;
    std::u32string_view v = we;
    std::u32string_view chosen = v;
    for (auto p : kPunctuation) {
      if (v.size() > p.size() && v.substr(0, p.size()) == p &&
          bare.count(std::u32string(v.substr(p.size()))))
        chosen = v.substr(p.size());
    }
    for (auto p : kPunctuation) {
      if (v.size() > p.size() && v.substr(v.size() - p.size()) == p &&
          bare.count(std::u32string(v.substr(0, v.size() - p.size()))))
        chosen = v.substr(0, v.size() - p.size());
    }
    Word w;
    w.text = encode_utf8(chosen);
    w.lower = to_lower(w.text);
    w.upper = is_upper_word(chosen);
    out.push_back(std::move(w));
  }
  return out;
}

bool negated(const Word& w) {
  return negations().count(w.lower) != 0 || w.lower.find("n't") != std::string::npos;
}

double booster_scalar(const Word& w, double valence, bool cap_diff) {
  auto it = boosters().find(w.lower);
  if (it == boosters().end()) return 0.0;
  double scalar = it->second;
  if (valence < 0) scalar = -scalar;
  if (w.upper && cap_diff) scalar += valence > 0 ? kCapsIncrement : -kCapsIncrement;
  return scalar;
}

bool is_so_or_this(const std::string& s) { return s == "so" || s == "this"; }

double never_check(double valence, const std::vector<Word>& w, std::size_t start, std::size_t i) {
  if (start == 0) {
    if (negated(w[i - 1])) valence *= kNegationScalar;
  } else if (start == 1) {
    if (w[i - 2].text == "never" && is_so_or_this(w[i - 1].text))
      valence *= 1.5;
    else if (negated(w[i - 2]))
      valence *= kNegationScalar;
  } else {
    if ((w[i - 3].text == "never" && is_so_or_this(w[i - 2].text)) || is_so_or_this(w[i - 1].text))
      valence *= 1.25;
    else if (negated(w[i - 3]))
      valence *= kNegationScalar;
  }
  return valence;
}

// Only reached with i >= 3. Idioms and bigram boosters match case-sensitively.
double idioms_check(double valence, const std::vector<Word>& w, std::size_t i) {
  const std::string onezero = w[i - 1].text + " " + w[i].text;
  const std::string twoonezero = w[i - 2].text + " " + w[i - 1].text + " " + w[i].text;
  const std::string twoone = w[i - 2].text + " " + w[i - 1].text;
  const std::string threetwoone = w[i - 3].text + " " + w[i - 2].text + " " + w[i - 1].text;
  const std::string threetwo = w[i - 3].text + " " + w[i - 2].text;
  for (const auto* seq : {&onezero, &twoonezero, &twoone, &threetwoone, &threetwo}) {
    if (auto it = idioms().find(*seq); it != idioms().end()) {
      valence = it->second;
      break;
    }
  }
  if (w.size() - 1 > i) {
    if (auto it = idioms().find(w[i].text + " " + w[i + 1].text); it != idioms().end())
      valence = it->second;
  }
  if (w.size() - 1 > i + 1) {
    auto it = idioms().find(w[i].text + " " + w[i + 1].text + " " + w[i + 2].text);
    if (it != idioms().end()) valence = it->second;
  }
  if (boosters().count(threetwo) || boosters().count(twoone)) valence += kBoosterDecrement;
  return valence;
}

double punctuation_emphasis(std::string_view text) {
  std::size_t bangs = 0, questions = 0;
  for (char c : text) {
    if (c == '!') ++bangs;
    if (c == '?') ++questions;
  }
  const double ep = static_cast<double>(std::min<std::size_t>(bangs, 4)) * 0.292;
  double qm = 0.0;
  if (questions > 1) qm = questions <= 3 ? static_cast<double>(questions) * 0.18 : 0.96;
  return ep + qm;
}

}  // namespace

ValenceLexicon read_valence_lexicon(std::istream& in) {
  ValenceLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0)
      throw Error(Errc::MalformedLine, "valence lexicon line " + std::to_string(line_no) +
                                           ": expected token<TAB>valence");
    const auto end = line.find('\t', tab + 1);
    const std::string measure = line.substr(tab + 1, end == std::string::npos ? end : end - tab - 1);
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(measure, &used);
      if (used != measure.size()) throw std::invalid_argument(measure);
    } catch (const std::exception&) {
      throw Error(Errc::MalformedLine, "valence lexicon line " + std::to_string(line_no) +
                                           ": bad valence '" + measure + "'");
    }
    if (!std::isfinite(v))
      throw Error(Errc::NonFiniteValue, "valence lexicon line " + std::to_string(line_no));
    lex.valence[line.substr(line.find_first_not_of(" \t"), tab - line.find_first_not_of(" \t"))] =
        v;
  }
  return lex;
}

ValenceLexicon load_valence_lexicon(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open " + path);
  return read_valence_lexicon(in);
}

SentimentAnalyzer::SentimentAnalyzer(ValenceLexicon lexicon) : lexicon_(std::move(lexicon)) {
  if (lexicon_.valence.empty()) throw Error(Errc::MissingLexicon, "valence lexicon is empty");
}

double SentimentAnalyzer::compound(std::string_view text) const {
  const auto words = words_and_emoticons(decode_utf8(text));
  if (words.empty()) return 0.0;

  std::size_t caps = 0;
  for (const auto& w : words) caps += w.upper ? 1 : 0;
  const bool cap_diff = caps > 0 && caps < words.size();

  // A repeated token is scored at the position of its first occurrence.
  std::unordered_map<std::string, std::size_t> first_index;
  for (std::size_t k = 0; k < words.size(); ++k) first_index.emplace(words[k].text, k);

  auto in_lexicon = [&](const Word& w) { return lexicon_.find(w.lower) != nullptr; };

  std::vector<double> sentiments;
  sentiments.reserve(words.size());
  for (const auto& item : words) {
    const std::size_t i = first_index.at(item.text);
    const bool kind_of = i + 1 < words.size() && item.lower == "kind" && words[i + 1].lower == "of";
    if (kind_of || boosters().count(item.lower)) {
      sentiments.push_back(0.0);
      continue;
    }
    double valence = 0.0;
    if (const double* base = lexicon_.find(item.lower)) {
      valence = *base;
      if (item.upper && cap_diff) valence += valence > 0 ? kCapsIncrement : -kCapsIncrement;
      for (std::size_t start = 0; start < 3; ++start) {
        if (i > start && !in_lexicon(words[i - (start + 1)])) {
          double s = booster_scalar(words[i - (start + 1)], valence, cap_diff);
          if (start == 1 && s != 0) s *= 0.95;
          if (start == 2 && s != 0) s *= 0.9;
          valence += s;
          valence = never_check(valence, words, start, i);
          if (start == 2) valence = idioms_check(valence, words, i);
        }
      }
      // "least" negates unless preceded by "at" or "very".
      if (i > 1 && !in_lexicon(words[i - 1]) && words[i - 1].lower == "least") {
        if (words[i - 2].lower != "at" && words[i - 2].lower != "very") valence *= kNegationScalar;
      } else if (i > 0 && !in_lexicon(words[i - 1]) && words[i - 1].lower == "least") {
        valence *= kNegationScalar;
      }
    }
    sentiments.push_back(valence);
  }

  for (std::size_t b = 0; b < words.size(); ++b) {
    if (words[b].lower != "but") continue;
    for (std::size_t k = 0; k < sentiments.size(); ++k) {
      if (k < b) sentiments[k] *= 0.5;
      else if (k > b) sentiments[k] *= 1.5;
    }
    break;
  }

  double sum = 0.0;
  for (double s : sentiments) sum += s;
  const double emphasis = punctuation_emphasis(text);
  if (sum > 0) sum += emphasis;
  else if (sum < 0) sum -= emphasis;
  return sum / std::sqrt(sum * sum + kNormalisationAlpha);
}

}  // namespace hcdeval::text
