#include "hcdeval/lexicon.hpp"

#include <filesystem>
#include <fstream>

#include "hcdeval/error.hpp"
#include "hcdeval/tokenize.hpp"

namespace hcdeval::lex {

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n\v\f";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string_view to_string(Category c) noexcept {
  switch (c) {
    case Category::AffordancePermission: return "affordance_permission";
    case Category::AffordanceInstrumental: return "affordance_instrumental";
    case Category::AffordanceAccess: return "affordance_access";
    case Category::AffectPositive: return "affect_positive";
    case Category::AffectNegative: return "affect_negative";
    case Category::Custom: return "custom";
  }
  return "custom";
}

std::optional<Category> parse_category(std::string_view s) {
  for (auto c : {Category::AffordancePermission, Category::AffordanceInstrumental,
                 Category::AffordanceAccess, Category::AffectPositive, Category::AffectNegative,
                 Category::Custom})
    if (to_string(c) == s) return c;
  return std::nullopt;
}

bool Lexicon::add(std::string_view term) {
  // Collapse internal runs of whitespace so "next  to" and "next to" agree.
  std::string collapsed;
  bool gap = false;
  for (char ch : trim(term)) {
    if (ch == ' ' || ch == '\t') {
      gap = true;
      continue;
    }
    if (gap && !collapsed.empty()) collapsed.push_back(' ');
    gap = false;
    collapsed.push_back(ch);
  }
  if (collapsed.empty()) return false;
  std::string t = text::to_lower(collapsed);
  if (!index_.insert(t).second) return false;
  terms_.push_back(std::move(t));
  return true;
}

Lexicon read_lexicon(std::istream& in, std::string name, Category category) {
  Lexicon lex(std::move(name), category);
  std::string line;
  while (std::getline(in, line)) {
    std::string_view v = line;
    if (auto hash = v.find('#'); hash != std::string_view::npos) v = v.substr(0, hash);
    lex.add(v);
  }
  if (lex.empty()) throw Error(Errc::EmptyLexicon, "lexicon '" + lex.name() + "' has no terms");
  return lex;
}

Lexicon load_lexicon(const std::string& path, Category category) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open " + path);
  return read_lexicon(in, std::filesystem::path(path).stem().string(), category);
}

void write_lexicon(std::ostream& out, const Lexicon& lexicon) {
  for (const auto& t : lexicon.terms()) out << t << '\n';
}

}  // namespace hcdeval::lex
